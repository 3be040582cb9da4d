#include "veriloop/runlog.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace veriloop {

namespace {

using ordered_json = nlohmann::ordered_json;

double ms_precision(double secs) { return std::round(secs * 1000.0) / 1000.0; }

Result<VerdictKind> parse_verdict_kind(const std::string& name) {
  using R = Result<VerdictKind>;
  for (VerdictKind k : {VerdictKind::Pass, VerdictKind::SyntaxFail, VerdictKind::GrammarFail,
                        VerdictKind::SemanticFail, VerdictKind::VerifyTimeout,
                        VerdictKind::TokenBudgetExceeded})
    if (verdict_kind_name(k) == name) return R::ok(k);
  return R::fail("unknown verdict kind: " + name);
}

}  // namespace

std::string run_record_to_json(const RunRecord& record) {
  ordered_json doc;
  doc["benchmark_id"] = record.benchmark_id;
  doc["domain"] = domain_name(record.domain);
  doc["method"] = record.method;
  doc["mode"] = run_mode_name(record.mode);
  doc["solved"] = record.solved;
  doc["total_secs"] = ms_precision(record.total_secs);
  doc["iterations_total"] = record.iterations_total;
  doc["iterations_distinct"] = record.iterations_distinct;
  doc["final_status"] = final_status_name(record.final_status);
  if (!record.error.empty()) doc["error"] = record.error;
  doc["verdicts"] = ordered_json::array();
  for (const auto& [cand, verdict] : record.verdicts) {
    ordered_json v;
    v["iteration"] = cand.iteration;
    v["raw_response"] = cand.raw_response;
    if (cand.extracted)
      v["extracted"] = *cand.extracted;
    else
      v["extracted"] = nullptr;
    v["gen_secs"] = ms_precision(cand.gen_secs);
    v["cache_hit"] = cand.cache_hit;
    ordered_json vv;
    vv["kind"] = verdict_kind_name(verdict.kind);
    if (verdict.detail)
      vv["detail"] = *verdict.detail;
    else
      vv["detail"] = nullptr;
    vv["verify_secs"] = ms_precision(verdict.verify_secs);
    v["verdict"] = vv;
    doc["verdicts"].push_back(std::move(v));
  }
  return doc.dump();
}

Result<RunRecord> run_record_from_json(const std::string& line) {
  using R = Result<RunRecord>;
  ordered_json doc = ordered_json::parse(line, nullptr, false);
  if (doc.is_discarded()) return R::fail("malformed run record JSON");
  RunRecord rec;
  try {
    rec.benchmark_id = doc.at("benchmark_id").get<std::string>();
    auto domain = parse_domain(doc.at("domain").get<std::string>());
    if (!domain) return R::fail(domain.error());
    rec.domain = domain.value();
    rec.method = doc.at("method").get<std::string>();
    rec.mode = doc.at("mode").get<std::string>() == "ilst" ? RunMode::Ilst : RunMode::SinglePass;
    rec.solved = doc.at("solved").get<bool>();
    rec.total_secs = doc.at("total_secs").get<double>();
    rec.iterations_total = doc.at("iterations_total").get<int>();
    rec.iterations_distinct = doc.at("iterations_distinct").get<int>();
    std::string status = doc.at("final_status").get<std::string>();
    if (status == "Solved")
      rec.final_status = FinalStatus::Solved;
    else if (status == "Timeout")
      rec.final_status = FinalStatus::Timeout;
    else if (status == "GeneratorError")
      rec.final_status = FinalStatus::GeneratorError;
    else
      return R::fail("unknown final status: " + status);
    if (doc.contains("error")) rec.error = doc["error"].get<std::string>();
    for (const auto& v : doc.at("verdicts")) {
      CandidateRecord cand;
      cand.iteration = v.at("iteration").get<int>();
      cand.raw_response = v.at("raw_response").get<std::string>();
      if (!v.at("extracted").is_null()) cand.extracted = v["extracted"].get<std::string>();
      cand.gen_secs = v.at("gen_secs").get<double>();
      cand.cache_hit = v.at("cache_hit").get<bool>();
      Verdict verdict;
      auto kind = parse_verdict_kind(v.at("verdict").at("kind").get<std::string>());
      if (!kind) return R::fail(kind.error());
      verdict.kind = kind.value();
      if (!v.at("verdict").at("detail").is_null())
        verdict.detail = v["verdict"]["detail"].get<std::string>();
      verdict.verify_secs = v.at("verdict").at("verify_secs").get<double>();
      rec.verdicts.push_back({std::move(cand), std::move(verdict)});
    }
  } catch (const ordered_json::exception& e) {
    return R::fail(std::string("run record missing fields: ") + e.what());
  }
  return R::ok(std::move(rec));
}

Result<bool> append_run_record(const std::string& path, const RunRecord& record) {
  using R = Result<bool>;
  std::ofstream out(path, std::ios::app);
  if (!out) return R::fail("cannot open run log for append: " + path);
  out << run_record_to_json(record) << "\n";
  return out ? R::ok(true) : R::fail("write failed: " + path);
}

Result<std::vector<RunRecord>> read_run_log(const std::string& path) {
  using R = Result<std::vector<RunRecord>>;
  std::ifstream in(path);
  if (!in) return R::fail("cannot open run log: " + path);
  std::vector<RunRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto rec = run_record_from_json(line);
    if (!rec) return R::fail("line " + std::to_string(line_no) + ": " + rec.error());
    records.push_back(rec.take());
  }
  return R::ok(std::move(records));
}

}  // namespace veriloop
