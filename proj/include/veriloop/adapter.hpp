#pragma once

#include <functional>
#include <string>
#include <vector>

#include "veriloop/result.hpp"

namespace veriloop {

/// One invocation of an external checking tool. The candidate payload goes
/// to the tool's stdin; args carry per-call context such as property names.
struct AdapterRequest {
  std::string payload;
  std::vector<std::string> args;
  double deadline_secs = 0;
};

struct AdapterResponse {
  enum class Status { Pass, Fail, Timeout };
  Status status = Status::Pass;
  std::string detail;  // counterexample or diagnostic text on Fail
};

/// A failing Result means the tool could not be run at all (an adapter
/// error); candidate-level outcomes are AdapterResponse values.
using Adapter = std::function<Result<AdapterResponse>(const AdapterRequest&)>;

}  // namespace veriloop
