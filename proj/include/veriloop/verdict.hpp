#pragma once

#include <optional>
#include <string>

namespace veriloop {

/// Outcome classification for one candidate.
enum class VerdictKind {
  Pass,
  SyntaxFail,
  GrammarFail,
  SemanticFail,
  VerifyTimeout,
  TokenBudgetExceeded,
};

std::string verdict_kind_name(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::Pass;
  std::optional<std::string> detail;  // counterexample text or parse error
  double verify_secs = 0;

  static Verdict pass(double secs = 0);
  static Verdict syntax_fail(std::string why, double secs = 0);
  static Verdict grammar_fail(std::string why, double secs = 0);
  /// A semantic failure always carries a nonempty witness description.
  static Verdict semantic_fail(std::string counterexample, double secs = 0);
  static Verdict verify_timeout(std::string why, double secs = 0);
  static Verdict token_budget_exceeded(std::string why, double secs = 0);
};

/// Wall-clock allowance for one benchmark run.
struct Budget {
  double total_secs = 600;
  double consumed_secs = 0;
};

constexpr double kDefaultBudgetSecs = 600;
/// The recursive-function domain gets a longer allowance.
constexpr double kRecursiveBudgetSecs = 900;
/// Bookkeeping slack: recorded totals may exceed the budget by this much,
/// but solutions completing past the budget itself never count.
constexpr double kGraceSecs = 2;

/// Remaining allowance after `elapsed` more seconds; never negative.
double split_budget(const Budget& budget, double elapsed);

/// Canonical cache key for a post-processed candidate: whitespace outside
/// string literals is dropped next to parentheses and collapsed to a single
/// space elsewhere, so layout variants of one candidate share a key.
std::string cache_key(const std::string& candidate);

}  // namespace veriloop
