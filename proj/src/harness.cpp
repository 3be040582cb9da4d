#include "veriloop/harness.hpp"

#include <chrono>
#include <map>
#include <set>

#include "veriloop/postprocess.hpp"

namespace veriloop {

std::string run_mode_name(RunMode mode) {
  return mode == RunMode::Ilst ? "ilst" : "single_pass";
}

std::string final_status_name(FinalStatus status) {
  switch (status) {
    case FinalStatus::Solved:
      return "Solved";
    case FinalStatus::Timeout:
      return "Timeout";
    case FinalStatus::GeneratorError:
      return "GeneratorError";
  }
  return "?";
}

GenOutput GenOutput::ok(std::string text) {
  return GenOutput{Status::Ok, std::move(text), ""};
}

GenOutput GenOutput::truncated(std::string partial) {
  return GenOutput{Status::TokenBudgetExceeded, std::move(partial), ""};
}

GenOutput GenOutput::deadline_exceeded() { return GenOutput{Status::DeadlineExceeded, "", ""}; }

GenOutput GenOutput::exhausted() { return GenOutput{Status::Exhausted, "", ""}; }

GenOutput GenOutput::transport_error(std::string why) {
  return GenOutput{Status::TransportError, "", std::move(why)};
}

std::string Verifier::canonical_key(const Benchmark&, const std::string& candidate) {
  return cache_key(candidate);
}

Clock steady_clock_seconds() {
  return [] {
    auto now = std::chrono::steady_clock::now().time_since_epoch();
    return std::chrono::duration<double>(now).count();
  };
}

namespace {

struct LoopContext {
  Clock now;
  std::function<Result<std::string>(const std::string&, const Benchmark&)> extract;
  bool cache_enabled = false;
};

LoopContext make_context(const Benchmark& benchmark, const HarnessOptions& options) {
  LoopContext ctx;
  ctx.now = options.clock ? options.clock : steady_clock_seconds();
  ctx.extract = options.extract
                    ? options.extract
                    : [](const std::string& raw, const Benchmark& b) { return postprocess(raw, b); };
  ctx.cache_enabled = options.cache.value_or(default_cache_enabled(benchmark.domain));
  return ctx;
}

}  // namespace

Result<RunRecord> run_ilst(const Benchmark& benchmark, Generator& generator, Verifier& verifier,
                           Budget budget, const HarnessOptions& options) {
  using R = Result<RunRecord>;
  LoopContext ctx = make_context(benchmark, options);

  RunRecord rec;
  rec.benchmark_id = benchmark.id;
  rec.domain = benchmark.domain;
  rec.mode = RunMode::Ilst;
  rec.method = options.method.empty() ? "generator:ilst" : options.method;
  rec.final_status = FinalStatus::Timeout;

  const double start = ctx.now();
  std::map<std::string, Verdict> cache;
  std::set<std::string> distinct;
  int iteration = 0;

  while (true) {
    double remaining = split_budget(budget, ctx.now() - start);
    if (remaining <= 0) break;

    ++iteration;
    double gen_start = ctx.now();
    GenOutput out = generator.generate(benchmark, remaining);
    double gen_secs = ctx.now() - gen_start;

    if (out.status == GenOutput::Status::DeadlineExceeded) break;
    if (out.status == GenOutput::Status::TransportError ||
        out.status == GenOutput::Status::Exhausted) {
      rec.final_status = FinalStatus::GeneratorError;
      rec.error = out.status == GenOutput::Status::Exhausted
                      ? "generator exhausted its candidate stream"
                      : out.error;
      break;
    }

    CandidateRecord cand;
    cand.iteration = iteration;
    cand.raw_response = out.raw_response;
    cand.gen_secs = gen_secs;

    if (out.status == GenOutput::Status::TokenBudgetExceeded) {
      distinct.insert(cache_key(out.raw_response));
      rec.verdicts.push_back(
          {cand, Verdict::token_budget_exceeded("response truncated at the output token limit")});
      continue;
    }

    auto extracted = ctx.extract(out.raw_response, benchmark);
    if (!extracted) {
      distinct.insert(cache_key(out.raw_response));
      rec.verdicts.push_back({cand, Verdict::syntax_fail(extracted.error())});
      continue;
    }
    cand.extracted = extracted.value();

    std::string key = verifier.canonical_key(benchmark, *cand.extracted);
    distinct.insert(key);
    if (ctx.cache_enabled) {
      auto hit = cache.find(key);
      if (hit != cache.end()) {
        cand.cache_hit = true;
        rec.verdicts.push_back({cand, hit->second});
        continue;
      }
    }

    double verify_deadline = split_budget(budget, ctx.now() - start);
    if (verify_deadline <= 0) {
      rec.verdicts.push_back({cand, Verdict::verify_timeout("no budget left to verify")});
      break;
    }
    double verify_start = ctx.now();
    auto verified = verifier.verify(benchmark, *cand.extracted, verify_deadline);
    double verify_secs = ctx.now() - verify_start;
    if (!verified) return R::fail(verified.error());
    Verdict verdict = verified.take();
    verdict.verify_secs = verify_secs;

    // A pass that lands after the deadline is not a solution.
    if (verdict.kind == VerdictKind::Pass && split_budget(budget, ctx.now() - start) <= 0)
      verdict = Verdict::verify_timeout("verified after the deadline", verify_secs);

    if (ctx.cache_enabled &&
        (verdict.kind == VerdictKind::SyntaxFail || verdict.kind == VerdictKind::GrammarFail ||
         verdict.kind == VerdictKind::SemanticFail)) {
      Verdict cached = verdict;
      cached.verify_secs = 0;  // replays cost nothing
      cache.emplace(key, std::move(cached));
    }

    rec.verdicts.push_back({cand, verdict});
    if (verdict.kind == VerdictKind::Pass) {
      rec.solved = true;
      rec.final_status = FinalStatus::Solved;
      break;
    }
  }

  rec.total_secs = ctx.now() - start;
  rec.iterations_total = static_cast<int>(rec.verdicts.size());
  rec.iterations_distinct = static_cast<int>(distinct.size());
  return R::ok(std::move(rec));
}

Result<RunRecord> run_single_pass(const Benchmark& benchmark, Generator& generator,
                                  Verifier& verifier, Budget budget,
                                  const HarnessOptions& options) {
  using R = Result<RunRecord>;
  LoopContext ctx = make_context(benchmark, options);

  RunRecord rec;
  rec.benchmark_id = benchmark.id;
  rec.domain = benchmark.domain;
  rec.mode = RunMode::SinglePass;
  rec.method = options.method.empty() ? "generator:single" : options.method;
  rec.final_status = FinalStatus::Timeout;

  const double start = ctx.now();
  auto finish = [&](FinalStatus status) {
    rec.final_status = status;
    rec.total_secs = ctx.now() - start;
    rec.iterations_total = static_cast<int>(rec.verdicts.size());
    rec.iterations_distinct = rec.verdicts.empty() ? 0 : 1;
    return R::ok(std::move(rec));
  };

  double remaining = split_budget(budget, 0);
  if (remaining <= 0) return finish(FinalStatus::Timeout);

  double gen_start = ctx.now();
  GenOutput out = generator.generate(benchmark, remaining);
  double gen_secs = ctx.now() - gen_start;

  if (out.status == GenOutput::Status::DeadlineExceeded) return finish(FinalStatus::Timeout);
  if (out.status == GenOutput::Status::TransportError ||
      out.status == GenOutput::Status::Exhausted) {
    rec.error = out.status == GenOutput::Status::Exhausted
                    ? "generator exhausted its candidate stream"
                    : out.error;
    return finish(FinalStatus::GeneratorError);
  }

  CandidateRecord cand;
  cand.iteration = 1;
  cand.raw_response = out.raw_response;
  cand.gen_secs = gen_secs;

  if (out.status == GenOutput::Status::TokenBudgetExceeded) {
    rec.verdicts.push_back(
        {cand, Verdict::token_budget_exceeded("response truncated at the output token limit")});
    return finish(FinalStatus::Timeout);
  }

  auto extracted = ctx.extract(out.raw_response, benchmark);
  if (!extracted) {
    rec.verdicts.push_back({cand, Verdict::syntax_fail(extracted.error())});
    return finish(FinalStatus::Timeout);
  }
  cand.extracted = extracted.value();

  double verify_deadline = split_budget(budget, ctx.now() - start);
  if (verify_deadline <= 0) {
    rec.verdicts.push_back({cand, Verdict::verify_timeout("no budget left to verify")});
    return finish(FinalStatus::Timeout);
  }
  double verify_start = ctx.now();
  auto verified = verifier.verify(benchmark, *cand.extracted, verify_deadline);
  double verify_secs = ctx.now() - verify_start;
  if (!verified) return R::fail(verified.error());
  Verdict verdict = verified.take();
  verdict.verify_secs = verify_secs;
  if (verdict.kind == VerdictKind::Pass && split_budget(budget, ctx.now() - start) <= 0)
    verdict = Verdict::verify_timeout("verified after the deadline", verify_secs);

  rec.verdicts.push_back({cand, verdict});
  if (verdict.kind == VerdictKind::Pass) {
    rec.solved = true;
    return finish(FinalStatus::Solved);
  }
  return finish(FinalStatus::Timeout);
}

}  // namespace veriloop
