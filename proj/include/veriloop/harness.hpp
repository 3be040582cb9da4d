#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "veriloop/benchmark.hpp"
#include "veriloop/result.hpp"
#include "veriloop/verdict.hpp"

namespace veriloop {

enum class RunMode { Ilst, SinglePass };
enum class FinalStatus { Solved, Timeout, GeneratorError };

std::string run_mode_name(RunMode mode);
std::string final_status_name(FinalStatus status);

struct CandidateRecord {
  int iteration = 0;  // 1-based
  std::string raw_response;
  std::optional<std::string> extracted;  // present iff post-processing succeeded
  double gen_secs = 0;
  bool cache_hit = false;
};

struct RunRecord {
  std::string benchmark_id;
  DomainKind domain = DomainKind::Sygus;
  std::string method;  // e.g. "llm:ilst" or "enumerator:single"
  RunMode mode = RunMode::Ilst;
  bool solved = false;
  double total_secs = 0;
  int iterations_total = 0;
  int iterations_distinct = 0;
  std::vector<std::pair<CandidateRecord, Verdict>> verdicts;
  FinalStatus final_status = FinalStatus::Timeout;
  std::string error;  // generator failure detail
};

struct GenOutput {
  enum class Status { Ok, TokenBudgetExceeded, DeadlineExceeded, Exhausted, TransportError };
  Status status = Status::Ok;
  std::string raw_response;  // partial text on truncation
  std::string error;

  static GenOutput ok(std::string text);
  static GenOutput truncated(std::string partial);
  static GenOutput deadline_exceeded();
  static GenOutput exhausted();
  static GenOutput transport_error(std::string why);
};

class Generator {
 public:
  virtual ~Generator() = default;
  virtual GenOutput generate(const Benchmark& benchmark, double deadline_secs) = 0;
};

class Verifier {
 public:
  virtual ~Verifier() = default;
  /// Candidate-level outcomes come back as Verdicts; a failing Result means
  /// the verifier itself could not run (misconfiguration, dead adapter).
  virtual Result<Verdict> verify(const Benchmark& benchmark, const std::string& candidate,
                                 double deadline_secs) = 0;
  /// Cache key for a post-processed candidate. The default is the layout
  /// normalization of cache_key(); domains with structured candidates
  /// override it with a canonical serialization.
  virtual std::string canonical_key(const Benchmark& benchmark, const std::string& candidate);
};

/// Monotonic seconds source; swappable so tests can script time.
using Clock = std::function<double()>;
Clock steady_clock_seconds();

struct HarnessOptions {
  std::optional<bool> cache;  // default: per-domain (see default_cache_enabled)
  Clock clock;                // default: steady_clock_seconds()
  std::function<Result<std::string>(const std::string&, const Benchmark&)> extract;
  std::string method;  // label stamped into the RunRecord
};

/// Generate→postprocess→verify with one fixed prompt until a Pass verdict or
/// budget exhaustion. Candidate-level failures become Verdicts; only an
/// unrunnable verifier fails the Result. Incorrect candidates already seen
/// (by canonical key) skip verification when caching is on.
Result<RunRecord> run_ilst(const Benchmark& benchmark, Generator& generator, Verifier& verifier,
                           Budget budget, const HarnessOptions& options = {});

/// One generation; whatever budget remains afterwards goes to the verifier.
Result<RunRecord> run_single_pass(const Benchmark& benchmark, Generator& generator,
                                  Verifier& verifier, Budget budget,
                                  const HarnessOptions& options = {});

}  // namespace veriloop
