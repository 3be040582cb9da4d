#include <fnmatch.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "veriloop/bench_io.hpp"
#include "veriloop/domains.hpp"
#include "veriloop/enumerator.hpp"
#include "veriloop/harness.hpp"
#include "veriloop/llm.hpp"
#include "veriloop/report.hpp"
#include "veriloop/runlog.hpp"
#include "veriloop/smv.hpp"
#include "veriloop/subprocess.hpp"
#include "veriloop/tla_sketch.hpp"

namespace fs = std::filesystem;
using namespace veriloop;

namespace {

// ── shared plumbing ─────────────────────────────────────────────────

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

bool has_glob_chars(const std::string& pattern) {
  return pattern.find_first_of("*?[") != std::string::npos;
}

/// Expands each pattern to matching files: literal paths must exist; a
/// glob applies to the file name within its (literal) parent directory.
Result<std::vector<std::string>> expand_patterns(const std::vector<std::string>& patterns) {
  using R = Result<std::vector<std::string>>;
  std::vector<std::string> paths;
  for (const std::string& pattern : patterns) {
    if (!has_glob_chars(pattern)) {
      if (!fs::exists(pattern)) return R::fail("no such file: " + pattern);
      paths.push_back(pattern);
      continue;
    }
    fs::path p(pattern);
    fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    if (has_glob_chars(dir.string())) {
      return R::fail("glob characters are only supported in the file name: " + pattern);
    }
    if (!fs::is_directory(dir)) return R::fail("no such directory: " + dir.string());
    std::vector<std::string> matched;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      std::string name = entry.path().filename().string();
      if (fnmatch(p.filename().string().c_str(), name.c_str(), 0) == 0) {
        matched.push_back(entry.path().string());
      }
    }
    if (matched.empty()) return R::fail("pattern matched no files: " + pattern);
    std::sort(matched.begin(), matched.end());
    paths.insert(paths.end(), matched.begin(), matched.end());
  }
  return R::ok(std::move(paths));
}

/// Splits an environment variable into a subprocess spec ("cmd arg arg").
std::optional<SubprocessSpec> spec_from_env(const char* var) {
  const char* value = std::getenv(var);
  if (!value || !*value) return std::nullopt;
  std::vector<std::string> words = split_ws(value);
  if (words.empty()) return std::nullopt;
  SubprocessSpec spec;
  spec.command = words.front();
  spec.base_args.assign(words.begin() + 1, words.end());
  return spec;
}

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return out;
}

// ── run ─────────────────────────────────────────────────────────────

struct RunSettings {
  std::vector<std::string> patterns;
  std::string domain;
  std::string target = "aiger";
  std::string generator = "enumerate";
  std::string mode = "ilst";
  double budget_secs = 0;  // 0 = per-domain default
  std::optional<bool> cache;
  bool relaxed = false;
  int workers = 1;
  uint64_t seed = 0;
  std::string out_dir = "out";
  int max_sketch_tokens = 24;
  LlmConfig llm;
};

/// Builds the verifier for one benchmark. Sketch checkers come from the
/// benchmark's own checker block; environment variables name the external
/// tools (paths and flags only — API tokens never travel this way).
Result<std::unique_ptr<Verifier>> make_verifier(const Benchmark& benchmark,
                                                const RunSettings& settings) {
  using R = Result<std::unique_ptr<Verifier>>;
  switch (benchmark.domain) {
    case DomainKind::Reactive: {
      ReactiveVerifier::Options options;
      if (auto spec = spec_from_env("VERILOOP_MODEL_CHECKER_CMD")) {
        options.external_checker = make_subprocess_adapter(*spec);
      }
      return R::ok(std::make_unique<ReactiveVerifier>(options));
    }
    case DomainKind::Sygus: {
      SearchSettings search;
      search.seed = settings.seed;
      std::optional<Adapter> solver;
      if (auto spec = spec_from_env("VERILOOP_SOLVER_CMD")) {
        solver = make_subprocess_adapter(*spec);
      }
      return R::ok(std::make_unique<SygusVerifier>(search, solver));
    }
    case DomainKind::TlaSketch: {
      const auto* payload = std::get_if<TlaSketchPayload>(&benchmark.aux);
      if (!payload) return R::fail(benchmark.id + ": sketch payload missing");
      SubprocessSpec spec;
      if (auto env_spec = spec_from_env("VERILOOP_TLC_CMD")) {
        spec = *env_spec;
      } else {
        spec.command = payload->sketch.checker.command;
      }
      if (spec.command.empty()) {
        return R::fail(benchmark.id +
                       ": no model checker configured (sidecar checker.command or "
                       "VERILOOP_TLC_CMD)");
      }
      spec.working_dir = payload->sketch.checker.working_dir;
      if (payload->sketch.checker.workers > 0) {
        spec.base_args.push_back("-workers");
        spec.base_args.push_back(std::to_string(payload->sketch.checker.workers));
      }
      return R::ok(std::make_unique<TlaSketchVerifier>(make_subprocess_adapter(spec)));
    }
    case DomainKind::Acl2sSketch: {
      auto spec = spec_from_env("VERILOOP_CGEN_CMD");
      if (!spec) {
        return R::fail(benchmark.id +
                       ": the recursive-function domain needs VERILOOP_CGEN_CMD to name the "
                       "counterexample generator");
      }
      return R::ok(std::make_unique<LispSketchVerifier>(make_subprocess_adapter(*spec)));
    }
  }
  return R::fail("unhandled domain");
}

int cmd_run(const RunSettings& settings) {
  auto domain = parse_domain(settings.domain);
  if (!domain) {
    std::cerr << "veriloop run: " << domain.error() << "\n";
    return 2;
  }
  if (settings.generator == "llm") {
    if (auto valid = validate_llm_config(settings.llm); !valid) {
      std::cerr << "veriloop run: " << valid.error() << "\n";
      return 2;
    }
  }

  auto paths = expand_patterns(settings.patterns);
  if (!paths) {
    std::cerr << "veriloop run: " << paths.error() << "\n";
    return 2;
  }

  LoadOptions load_options;
  load_options.target = settings.target == "smv" ? ReactiveTarget::Smv : ReactiveTarget::Aiger;
  load_options.relaxed_grammar = settings.relaxed;
  std::vector<Benchmark> benchmarks;
  bool load_failed = false;
  for (const std::string& path : paths.value()) {
    auto loaded = load_benchmark(domain.value(), path, load_options);
    if (!loaded) {
      std::cerr << "veriloop run: " << loaded.error() << "\n";
      load_failed = true;
      continue;
    }
    benchmarks.push_back(loaded.take());
  }
  if (load_failed) return 2;

  fs::create_directories(fs::path(settings.out_dir) / "runs");
  Budget budget = default_budget(domain.value());
  if (settings.budget_secs > 0) budget.total_secs = settings.budget_secs;
  const std::string generator_label = settings.generator == "llm" ? "llm" : "enumerator";
  const std::string method = generator_label + ":" + settings.mode;
  const RunMode mode = settings.mode == "single" ? RunMode::SinglePass : RunMode::Ilst;

  std::vector<std::optional<RunRecord>> records(benchmarks.size());
  std::vector<std::string> errors;
  std::mutex errors_mutex;
  std::atomic<size_t> next{0};
  const int workers = std::min<int>(settings.workers, static_cast<int>(benchmarks.size()));

  auto worker_body = [&](int worker_index) {
    std::ofstream audit;
    if (settings.generator == "llm") {
      audit.open(fs::path(settings.out_dir) /
                     ("llm_audit_w" + std::to_string(worker_index) + ".ndjson"),
                 std::ios::app);
    }
    std::unique_ptr<Generator> generator;
    if (settings.generator == "llm") {
      generator = std::make_unique<LlmGenerator>(settings.llm, audit.is_open() ? &audit : nullptr);
    } else {
      EnumeratorSettings enum_settings;
      enum_settings.max_sketch_tokens = settings.max_sketch_tokens;
      generator = std::make_unique<EnumeratorGenerator>(enum_settings);
    }

    for (size_t i = next.fetch_add(1); i < benchmarks.size(); i = next.fetch_add(1)) {
      const Benchmark& benchmark = benchmarks[i];
      auto verifier = make_verifier(benchmark, settings);
      if (!verifier) {
        std::lock_guard<std::mutex> lock(errors_mutex);
        errors.push_back(verifier.error());
        continue;
      }
      HarnessOptions options;
      options.cache = settings.cache;
      options.method = method;
      auto run = mode == RunMode::Ilst
                     ? run_ilst(benchmark, *generator, *verifier.value(), budget, options)
                     : run_single_pass(benchmark, *generator, *verifier.value(), budget, options);
      if (!run) {
        std::lock_guard<std::mutex> lock(errors_mutex);
        errors.push_back(benchmark.id + ": " + run.error());
        continue;
      }
      std::string log_path =
          (fs::path(settings.out_dir) / "runs" / (sanitize(benchmark.id) + ".ndjson")).string();
      if (auto appended = append_run_record(log_path, run.value()); !appended) {
        std::lock_guard<std::mutex> lock(errors_mutex);
        errors.push_back(appended.error());
      }
      records[i] = run.take();
    }
  };

  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker_body, w);
  worker_body(0);
  for (std::thread& t : pool) t.join();

  std::vector<RunRecord> merged;
  for (auto& record : records) {
    if (record) merged.push_back(std::move(*record));
  }
  std::string merged_path = (fs::path(settings.out_dir) / "run_log.ndjson").string();
  std::error_code ec;
  fs::remove(merged_path, ec);
  for (const RunRecord& record : merged) {
    if (auto appended = append_run_record(merged_path, record); !appended) {
      std::cerr << "veriloop run: " << appended.error() << "\n";
      return 2;
    }
  }

  auto rows = summarize_by_method(merged);
  std::ofstream summary(fs::path(settings.out_dir) / "summary.csv");
  summary << summary_csv(rows);
  std::ofstream curve(fs::path(settings.out_dir) / "cactus.csv");
  curve << cactus_csv(cactus(merged));
  std::ofstream doc(fs::path(settings.out_dir) / "report.json");
  doc << report_json(merged).dump(2) << "\n";

  int solved = 0;
  for (const RunRecord& record : merged) solved += record.solved ? 1 : 0;
  std::cout << method << ": solved " << solved << "/" << merged.size() << ", logs in "
            << settings.out_dir << "\n";

  for (const std::string& error : errors) std::cerr << "veriloop run: " << error << "\n";
  return errors.empty() ? 0 : 1;
}

// ── check ───────────────────────────────────────────────────────────

int report_verdict(const Verdict& verdict) {
  std::ostream& out = verdict.kind == VerdictKind::Pass ? std::cout : std::cerr;
  out << verdict_kind_name(verdict.kind);
  if (verdict.detail && !verdict.detail->empty()) out << ": " << *verdict.detail;
  out << "\n";
  return verdict.kind == VerdictKind::Pass ? 0 : 1;
}

int check_reactive(ReactiveTarget target, const std::string& candidate_path,
                   const std::string& tlsf_path) {
  auto candidate = read_text_file(candidate_path);
  if (!candidate) {
    std::cerr << candidate.error() << "\n";
    return 2;
  }
  LoadOptions options;
  options.target = target;
  auto benchmark = load_benchmark(DomainKind::Reactive, tlsf_path, options);
  if (!benchmark) {
    std::cerr << benchmark.error() << "\n";
    return 2;
  }
  ReactiveVerifier verifier;
  auto verdict = verifier.verify(benchmark.value(), candidate.value(), kDefaultBudgetSecs);
  if (!verdict) {
    std::cerr << verdict.error() << "\n";
    return 2;
  }
  return report_verdict(verdict.value());
}

int check_determinism(const std::string& module_path, const std::string& out_dir) {
  auto text = read_text_file(module_path);
  if (!text) {
    std::cerr << text.error() << "\n";
    return 2;
  }
  auto module = parse_smv_subset(text.value());
  if (!module) {
    std::cerr << "SyntaxFail: " << module.error() << "\n";
    return 1;
  }
  auto fsm = smv_to_fsm(module.value());
  if (!fsm) {
    std::cerr << "SemanticFail: " << fsm.error() << "\n";
    return 1;
  }
  DeterminismResult result = check_determinism(fsm.value(), kDefaultStateCap);
  if (result.status == CheckStatus::Violated) {
    std::cerr << "Diverges: " << result.note << "\n";
    return 1;
  }
  if (result.status == CheckStatus::LimitExceeded) {
    std::cerr << "state cap exceeded before the check finished\n";
    return 1;
  }

  fs::path composed_path = out_dir.empty()
                               ? fs::path(module_path + ".composed.smv")
                               : fs::path(out_dir) / (fs::path(module_path).filename().string() +
                                                      ".composed.smv");
  if (!out_dir.empty()) fs::create_directories(out_dir);
  std::ofstream out(composed_path);
  out << self_compose(module.value(), "testmod");
  out.close();
  std::cout << composed_path.string() << "\n";
  std::cerr << "Deterministic\n";
  return 0;
}

int check_sygus(const std::string& problem_path, const std::string& candidate_path,
                uint64_t seed) {
  auto benchmark = load_benchmark(DomainKind::Sygus, problem_path);
  if (!benchmark) {
    std::cerr << benchmark.error() << "\n";
    return 2;
  }
  auto candidate = read_text_file(candidate_path);
  if (!candidate) {
    std::cerr << candidate.error() << "\n";
    return 2;
  }
  SearchSettings search;
  search.seed = seed;
  std::optional<Adapter> solver;
  if (auto spec = spec_from_env("VERILOOP_SOLVER_CMD")) {
    solver = make_subprocess_adapter(*spec);
  }
  SygusVerifier verifier(search, solver);
  auto verdict = verifier.verify(benchmark.value(), candidate.value(), kDefaultBudgetSecs);
  if (!verdict) {
    std::cerr << verdict.error() << "\n";
    return 2;
  }
  return report_verdict(verdict.value());
}

int check_mapping(const std::string& sketch_path, const std::string& mapping_path,
                  const std::string& sidecar, bool relaxed) {
  LoadOptions options;
  options.relaxed_grammar = relaxed;
  options.sidecar_path = sidecar;
  auto benchmark = load_benchmark(DomainKind::TlaSketch, sketch_path, options);
  if (!benchmark) {
    std::cerr << benchmark.error() << "\n";
    return 2;
  }
  auto mapping_text = read_text_file(mapping_path);
  if (!mapping_text) {
    std::cerr << mapping_text.error() << "\n";
    return 2;
  }
  const auto& sketch = std::get<TlaSketchPayload>(benchmark.value().aux).sketch;
  auto mapping = parse_mapping(mapping_text.value(), sketch);
  if (!mapping) {
    std::cerr << "SyntaxFail: " << mapping.error() << "\n";
    return 1;
  }
  if (!relaxed) {
    if (auto gate = check_mapping_grammar(mapping.value(), sketch); !gate) {
      std::cerr << "GrammarFail: " << gate.error() << "\n";
      return 1;
    }
  }
  std::cout << substitute(sketch, mapping.value());
  std::cerr << "Pass\n";
  return 0;
}

int check_sexpr(const std::string& candidate_path, const std::string& bundle_path) {
  auto text = read_text_file(candidate_path);
  if (!text) {
    std::cerr << text.error() << "\n";
    return 2;
  }
  auto terms = parse_sexprs(text.value());
  if (!terms) {
    std::cerr << "SyntaxFail: " << terms.error() << "\n";
    return 1;
  }
  if (!bundle_path.empty()) {
    auto benchmark = load_benchmark(DomainKind::Acl2sSketch, bundle_path);
    if (!benchmark) {
      std::cerr << benchmark.error() << "\n";
      return 2;
    }
    const auto& bundle = std::get<Acl2sPayload>(benchmark.value().aux).bundle;
    if (auto valid = validate_candidate(terms.value(), bundle); !valid) {
      std::cerr << "SyntaxFail: " << valid.error() << "\n";
      return 1;
    }
  }
  for (const Term& term : terms.value()) std::cout << print_term(term) << "\n";
  std::cerr << "Pass\n";
  return 0;
}

// ── report ──────────────────────────────────────────────────────────

int cmd_report(const std::vector<std::string>& log_paths, const std::string& out_dir) {
  std::vector<RunRecord> records;
  for (const std::string& path : log_paths) {
    auto loaded = read_run_log(path);
    if (!loaded) {
      std::cerr << "veriloop report: " << loaded.error() << "\n";
      return 2;
    }
    auto batch = loaded.take();
    records.insert(records.end(), batch.begin(), batch.end());
  }

  // One summary row per (method, domain): records are partitioned by domain
  // in order of first appearance, then summarized per method within each.
  std::vector<DomainKind> domain_order;
  for (const RunRecord& record : records) {
    if (std::find(domain_order.begin(), domain_order.end(), record.domain) ==
        domain_order.end()) {
      domain_order.push_back(record.domain);
    }
  }

  std::string summary = "domain,";
  std::string curve = "domain,method,t,c\n";
  bool header_done = false;
  nlohmann::json domains = nlohmann::json::array();
  for (DomainKind domain : domain_order) {
    std::vector<RunRecord> group;
    for (const RunRecord& record : records) {
      if (record.domain == domain) group.push_back(record);
    }
    std::string csv = summary_csv(summarize_by_method(group));
    std::istringstream lines(csv);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
      if (first) {
        if (!header_done) {
          summary += line + "\n";
          header_done = true;
        }
        first = false;
        continue;
      }
      summary += domain_name(domain) + "," + line + "\n";
    }
    for (const SummaryRow& row : summarize_by_method(group)) {
      std::vector<RunRecord> method_group;
      for (const RunRecord& record : group) {
        if (record.method == row.method) method_group.push_back(record);
      }
      for (const CactusPoint& point : cactus(method_group)) {
        std::ostringstream t;
        t.precision(17);
        t << point.t;
        curve += domain_name(domain) + "," + row.method + "," + t.str() + "," +
                 std::to_string(point.c) + "\n";
      }
    }
    nlohmann::json entry = report_json(group);
    entry["domain"] = domain_name(domain);
    domains.push_back(std::move(entry));
  }
  if (!header_done) {
    summary +=
        "method,total,solved,success_time_min,success_time_max,success_time_mean,"
        "success_iters_min,success_iters_max,success_iters_mean,success_iters_median,"
        "fail_iters_min,fail_iters_max,fail_iters_mean,fail_iters_median,"
        "unverified_solutions\n";
  }

  fs::create_directories(out_dir);
  std::ofstream summary_out(fs::path(out_dir) / "summary.csv");
  summary_out << summary;
  std::ofstream curve_out(fs::path(out_dir) / "cactus.csv");
  curve_out << curve;
  std::ofstream doc(fs::path(out_dir) / "report.json");
  doc << nlohmann::json{{"domains", std::move(domains)},
                        {"records", static_cast<int>(records.size())}}
             .dump(2)
      << "\n";
  std::cout << "report written to " << out_dir << " (" << records.size() << " records)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifier-in-the-loop synthesis harness"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file; flags override file values");

  // run
  RunSettings settings;
  CLI::App* run = app.add_subcommand("run", "run benchmarks under a generator and verifier");
  run->add_option("benchmarks", settings.patterns, "benchmark files or globs")->required();
  run->add_option("--domain", settings.domain, "reactive | sygus | tla_sketch | acl2s_sketch")
      ->required();
  run->add_option("--target", settings.target, "reactive output format")
      ->check(CLI::IsMember({"aiger", "smv"}));
  run->add_option("--generator", settings.generator, "candidate source")
      ->check(CLI::IsMember({"llm", "enumerate"}));
  run->add_option("--mode", settings.mode, "loop until budget or one shot")
      ->check(CLI::IsMember({"ilst", "single"}));
  run->add_option("--budget-secs", settings.budget_secs, "per-benchmark budget (0 = default)")
      ->check(CLI::NonNegativeNumber);
  auto* cache_flag = run->add_flag("--cache", "cache definitive failures");
  auto* no_cache_flag = run->add_flag("--no-cache", "verify every candidate");
  run->add_flag("--relaxed", settings.relaxed, "skip sketch grammar gating and prompt grammars");
  run->add_option("--workers", settings.workers, "parallel benchmark runners")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", settings.seed, "search seed");
  run->add_option("--out", settings.out_dir, "output directory");
  run->add_option("--max-sketch-tokens", settings.max_sketch_tokens,
                  "enumerator cap on total fill tokens");
  run->add_option("--endpoint", settings.llm.endpoint, "chat-completions URL");
  run->add_option("--model", settings.llm.model_name, "model name");
  run->add_option("--temperature", settings.llm.temperature);
  run->add_option("--top-p", settings.llm.top_p);
  run->add_option("--top-k", settings.llm.top_k);
  run->add_option("--max-output-tokens", settings.llm.max_output_tokens);
  run->add_option("--reasoning-effort", settings.llm.reasoning_effort)
      ->check(CLI::IsMember({"low", "medium", "high"}));
  run->add_option("--api-key-env", settings.llm.api_key_env,
                  "name of the environment variable holding the bearer token");

  // check
  std::string check_kind;
  std::vector<std::string> check_paths;
  std::string check_out;
  std::string check_sidecar;
  bool check_relaxed = false;
  uint64_t check_seed = 0;
  CLI::App* check = app.add_subcommand("check", "run one validator on files");
  check->add_option("kind", check_kind, "aiger | smv | determinism | sygus | mapping | sexpr")
      ->required()
      ->check(CLI::IsMember({"aiger", "smv", "determinism", "sygus", "mapping", "sexpr"}));
  check->add_option("paths", check_paths, "input files (see README for each kind)")->required();
  check->add_option("--out", check_out, "directory for derived files");
  check->add_option("--sidecar", check_sidecar, "sketch hole listing path");
  check->add_flag("--relaxed", check_relaxed, "skip the sketch grammar gate");
  check->add_option("--seed", check_seed, "search seed");

  // report
  std::vector<std::string> report_logs;
  std::string report_out = "out";
  CLI::App* report = app.add_subcommand("report", "aggregate run logs into CSV and JSON");
  report->add_option("logs", report_logs, "run-log files (NDJSON)");
  report->add_option("--out", report_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (cache_flag->count() && no_cache_flag->count()) {
      std::cerr << "veriloop run: choose one of --cache / --no-cache\n";
      return 2;
    }
    if (cache_flag->count()) settings.cache = true;
    if (no_cache_flag->count()) settings.cache = false;
    return cmd_run(settings);
  }

  if (check->parsed()) {
    auto need = [&](size_t n) {
      if (check_paths.size() == n) return true;
      std::cerr << "veriloop check " << check_kind << ": expected " << n << " path(s)\n";
      return false;
    };
    if (check_kind == "aiger") {
      if (!need(2)) return 2;
      return check_reactive(ReactiveTarget::Aiger, check_paths[0], check_paths[1]);
    }
    if (check_kind == "smv") {
      if (!need(2)) return 2;
      return check_reactive(ReactiveTarget::Smv, check_paths[0], check_paths[1]);
    }
    if (check_kind == "determinism") {
      if (!need(1)) return 2;
      return check_determinism(check_paths[0], check_out);
    }
    if (check_kind == "sygus") {
      if (!need(2)) return 2;
      return check_sygus(check_paths[0], check_paths[1], check_seed);
    }
    if (check_kind == "mapping") {
      if (!need(2)) return 2;
      return check_mapping(check_paths[0], check_paths[1], check_sidecar, check_relaxed);
    }
    if (!need(check_paths.size() == 2 ? 2 : 1)) return 2;
    return check_sexpr(check_paths[0], check_paths.size() == 2 ? check_paths[1] : "");
  }

  return cmd_report(report_logs, report_out);
}
