#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "veriloop/result.hpp"

namespace veriloop {

struct BoolExpr;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

/// Propositional expression over named boolean signals.
struct BoolExpr {
  enum class Op { Var, Const, Not, And, Or, Implies, Iff, Eq };

  Op op = Op::Const;
  std::string name;  // Var
  bool value = false;  // Const
  BoolExprPtr lhs, rhs;  // Not uses lhs only

  static BoolExprPtr var(std::string n);
  static BoolExprPtr constant(bool v);
  static BoolExprPtr make(Op op, BoolExprPtr a, BoolExprPtr b = nullptr);
};

struct BoolParseOptions {
  // Accept the C-style spellings &&, ||, ~ as synonyms. When false they are
  // a parse error.
  bool allow_c_operators = false;
};

/// Parses with precedence (tightest first): ! = & | <-> ->.
/// '->' associates to the right, the rest to the left.
Result<BoolExprPtr> parse_bool_expr(const std::string& text, const BoolParseOptions& opts = {});

/// Minimal-parenthesis rendering; reparsing yields the same structure.
std::string print_bool_expr(const BoolExprPtr& e);

/// Evaluates under a name lookup; unknown names are an error.
Result<bool> eval_bool_expr(const BoolExprPtr& e,
                            const std::function<std::optional<bool>(const std::string&)>& lookup);

void collect_bool_names(const BoolExprPtr& e, std::set<std::string>& out);

}  // namespace veriloop
