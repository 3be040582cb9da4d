#include "veriloop/report.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

namespace veriloop {

namespace {

double mean_of(const std::vector<double>& xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

/// Median over sorted data; even-length lists average the two central values.
double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

std::optional<TimeStats> time_stats(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  TimeStats s;
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  s.mean = mean_of(xs);
  return s;
}

std::optional<IterStats> iter_stats(const std::vector<int>& xs) {
  if (xs.empty()) return std::nullopt;
  IterStats s;
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  std::vector<double> as_double(xs.begin(), xs.end());
  s.mean = mean_of(as_double);
  s.median = median_of(std::move(as_double));
  return s;
}

std::string full_precision(double x) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
  return out.str();
}

void append_cell(std::string& line, const std::string& cell) {
  line += ',';
  line += cell;
}

void append_time(std::string& line, const std::optional<TimeStats>& s) {
  if (s) {
    append_cell(line, full_precision(s->min));
    append_cell(line, full_precision(s->max));
    append_cell(line, full_precision(s->mean));
  } else {
    line += ",,,";
  }
}

void append_iters(std::string& line, const std::optional<IterStats>& s) {
  if (s) {
    append_cell(line, std::to_string(s->min));
    append_cell(line, std::to_string(s->max));
    append_cell(line, full_precision(s->mean));
    append_cell(line, full_precision(s->median));
  } else {
    line += ",,,,";
  }
}

nlohmann::json time_json(const TimeStats& s) {
  return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}};
}

nlohmann::json iter_json(const IterStats& s) {
  return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"median", s.median}};
}

}  // namespace

SummaryRow summarize(const std::vector<RunRecord>& records, const std::string& method_name) {
  SummaryRow row;
  row.method = method_name;
  row.total = static_cast<int>(records.size());

  std::vector<double> success_times;
  std::vector<int> success_iters, fail_iters;
  int unverified = 0;
  for (const RunRecord& rec : records) {
    if (rec.solved) {
      ++row.solved;
      success_times.push_back(rec.total_secs);
      if (rec.mode == RunMode::Ilst) success_iters.push_back(rec.iterations_total);
    } else {
      if (rec.mode == RunMode::Ilst) fail_iters.push_back(rec.iterations_total);
      if (!rec.verdicts.empty() &&
          rec.verdicts.back().second.kind == VerdictKind::VerifyTimeout) {
        ++unverified;
      }
    }
  }
  row.success_time = time_stats(success_times);
  row.success_iters = iter_stats(success_iters);
  row.fail_iters = iter_stats(fail_iters);
  if (unverified > 0) row.unverified_solutions = unverified;
  return row;
}

std::vector<SummaryRow> summarize_by_method(const std::vector<RunRecord>& records) {
  std::vector<std::string> order;
  for (const RunRecord& rec : records) {
    if (std::find(order.begin(), order.end(), rec.method) == order.end()) {
      order.push_back(rec.method);
    }
  }
  std::vector<SummaryRow> rows;
  for (const std::string& method : order) {
    std::vector<RunRecord> group;
    for (const RunRecord& rec : records) {
      if (rec.method == method) group.push_back(rec);
    }
    rows.push_back(summarize(group, method));
  }
  return rows;
}

std::vector<CactusPoint> cactus(const std::vector<RunRecord>& records) {
  std::vector<std::pair<double, std::string>> solved;
  for (const RunRecord& rec : records) {
    if (rec.solved) solved.emplace_back(rec.total_secs, rec.benchmark_id);
  }
  std::sort(solved.begin(), solved.end());
  std::vector<CactusPoint> points;
  points.reserve(solved.size());
  for (size_t i = 0; i < solved.size(); ++i) {
    points.push_back({solved[i].first, static_cast<int>(i) + 1});
  }
  return points;
}

double total_compute(const std::vector<RunRecord>& records, const Budget& budget) {
  double total = 0;
  for (const RunRecord& rec : records) {
    total += rec.solved ? rec.total_secs : budget.total_secs;
  }
  return total;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "method,total,solved,"
      "success_time_min,success_time_max,success_time_mean,"
      "success_iters_min,success_iters_max,success_iters_mean,success_iters_median,"
      "fail_iters_min,fail_iters_max,fail_iters_mean,fail_iters_median,"
      "unverified_solutions\n";
  for (const SummaryRow& row : rows) {
    std::string line = row.method;
    append_cell(line, std::to_string(row.total));
    append_cell(line, std::to_string(row.solved));
    append_time(line, row.success_time);
    append_iters(line, row.success_iters);
    append_iters(line, row.fail_iters);
    append_cell(line, row.unverified_solutions ? std::to_string(*row.unverified_solutions) : "");
    out += line;
    out += '\n';
  }
  return out;
}

std::string cactus_csv(const std::vector<CactusPoint>& points) {
  std::string out = "t,c\n";
  for (const CactusPoint& p : points) {
    out += full_precision(p.t);
    out += ',';
    out += std::to_string(p.c);
    out += '\n';
  }
  return out;
}

nlohmann::json report_json(const std::vector<RunRecord>& records) {
  nlohmann::json methods = nlohmann::json::array();
  for (const SummaryRow& row : summarize_by_method(records)) {
    nlohmann::json entry;
    entry["method"] = row.method;
    entry["total"] = row.total;
    entry["solved"] = row.solved;
    if (row.success_time) entry["success_time"] = time_json(*row.success_time);
    if (row.success_iters) entry["success_iterations"] = iter_json(*row.success_iters);
    if (row.fail_iters) entry["fail_iterations"] = iter_json(*row.fail_iters);
    if (row.unverified_solutions) entry["unverified_solutions"] = *row.unverified_solutions;

    std::vector<RunRecord> group;
    for (const RunRecord& rec : records) {
      if (rec.method == row.method) group.push_back(rec);
    }
    nlohmann::json curve = nlohmann::json::array();
    for (const CactusPoint& p : cactus(group)) {
      curve.push_back(nlohmann::json::array({p.t, p.c}));
    }
    entry["cactus"] = std::move(curve);
    methods.push_back(std::move(entry));
  }
  return nlohmann::json{{"methods", std::move(methods)},
                        {"records", static_cast<int>(records.size())}};
}

}  // namespace veriloop
