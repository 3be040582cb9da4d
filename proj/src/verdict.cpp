#include "veriloop/verdict.hpp"

#include <algorithm>
#include <cctype>

namespace veriloop {

std::string verdict_kind_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Pass:
      return "Pass";
    case VerdictKind::SyntaxFail:
      return "SyntaxFail";
    case VerdictKind::GrammarFail:
      return "GrammarFail";
    case VerdictKind::SemanticFail:
      return "SemanticFail";
    case VerdictKind::VerifyTimeout:
      return "VerifyTimeout";
    case VerdictKind::TokenBudgetExceeded:
      return "TokenBudgetExceeded";
  }
  return "?";
}

Verdict Verdict::pass(double secs) { return Verdict{VerdictKind::Pass, std::nullopt, secs}; }

Verdict Verdict::syntax_fail(std::string why, double secs) {
  return Verdict{VerdictKind::SyntaxFail, std::move(why), secs};
}

Verdict Verdict::grammar_fail(std::string why, double secs) {
  return Verdict{VerdictKind::GrammarFail, std::move(why), secs};
}

Verdict Verdict::semantic_fail(std::string counterexample, double secs) {
  if (counterexample.empty()) counterexample = "unspecified counterexample";
  return Verdict{VerdictKind::SemanticFail, std::move(counterexample), secs};
}

Verdict Verdict::verify_timeout(std::string why, double secs) {
  return Verdict{VerdictKind::VerifyTimeout, std::move(why), secs};
}

Verdict Verdict::token_budget_exceeded(std::string why, double secs) {
  return Verdict{VerdictKind::TokenBudgetExceeded, std::move(why), secs};
}

double split_budget(const Budget& budget, double elapsed) {
  return std::max(0.0, budget.total_secs - budget.consumed_secs - elapsed);
}

std::string cache_key(const std::string& candidate) {
  auto is_delim = [](char c) { return c == '(' || c == ')'; };
  std::string out;
  bool in_string = false;
  bool pending_space = false;
  for (size_t k = 0; k < candidate.size(); ++k) {
    char c = candidate[k];
    if (in_string) {
      out += c;
      if (c == '\\' && k + 1 < candidate.size()) {
        out += candidate[++k];
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty() && !is_delim(out.back()) && !is_delim(c)) out += ' ';
    pending_space = false;
    out += c;
    if (c == '"') in_string = true;
  }
  return out;
}

}  // namespace veriloop
