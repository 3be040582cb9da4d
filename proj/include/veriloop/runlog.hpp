#pragma once

#include <string>
#include <vector>

#include "veriloop/harness.hpp"
#include "veriloop/result.hpp"

namespace veriloop {

/// One JSON document per RunRecord, newline-delimited. Durations are
/// serialized in seconds at millisecond precision.
std::string run_record_to_json(const RunRecord& record);

Result<RunRecord> run_record_from_json(const std::string& line);

/// Appends one record line; creates the file when missing.
Result<bool> append_run_record(const std::string& path, const RunRecord& record);

/// Reads every nonempty line of a run log.
Result<std::vector<RunRecord>> read_run_log(const std::string& path);

}  // namespace veriloop
