#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "veriloop/harness.hpp"

namespace veriloop {

struct TimeStats {
  double min = 0;
  double max = 0;
  double mean = 0;
};

struct IterStats {
  int min = 0;
  int max = 0;
  double mean = 0;
  double median = 0;  // mean of the two central values for even-length data
};

/// One summary-table line for a (method, record set) pair. Statistics are
/// computed over the relevant subset only: success columns over solved
/// records, fail columns over unsolved loop-mode records. A field is absent
/// when its subset is empty or when the mode has no iteration notion
/// (single-pass records contribute no iteration statistics).
struct SummaryRow {
  std::string method;
  int total = 0;
  int solved = 0;
  std::optional<TimeStats> success_time;
  std::optional<IterStats> success_iters;
  std::optional<IterStats> fail_iters;
  /// Unsolved runs whose last verdict was a verification timeout: the
  /// generator produced a candidate, the verifier could not finish judging
  /// it. Reported separately so "solved" stays strictly verified.
  std::optional<int> unverified_solutions;
};

struct CactusPoint {
  double t = 0;  // success time of the c-th fastest solved benchmark
  int c = 0;     // cumulative solved count
};

/// Pre: all records carry the same method label (the one passed in).
SummaryRow summarize(const std::vector<RunRecord>& records, const std::string& method_name);

/// Groups by the method label stamped into each record, in order of first
/// appearance, and summarizes each group.
std::vector<SummaryRow> summarize_by_method(const std::vector<RunRecord>& records);

/// Solved records sorted by (time, benchmark id); point i is (t_i, i+1).
std::vector<CactusPoint> cactus(const std::vector<RunRecord>& records);

/// Total wall-clock attributed to the run set: the success time of each
/// solved record plus the full budget for each unsolved one.
double total_compute(const std::vector<RunRecord>& records, const Budget& budget);

/// CSV with a header line; absent fields are empty cells; full precision.
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// "t,c" pairs with a header line; full precision.
std::string cactus_csv(const std::vector<CactusPoint>& points);

/// One JSON document with per-method summary rows and cactus data.
nlohmann::json report_json(const std::vector<RunRecord>& records);

}  // namespace veriloop
