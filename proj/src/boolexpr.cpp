#include "veriloop/boolexpr.hpp"

#include <cctype>
#include <vector>

namespace veriloop {

BoolExprPtr BoolExpr::var(std::string n) {
  auto e = std::make_shared<BoolExpr>();
  e->op = Op::Var;
  e->name = std::move(n);
  return e;
}

BoolExprPtr BoolExpr::constant(bool v) {
  auto e = std::make_shared<BoolExpr>();
  e->op = Op::Const;
  e->value = v;
  return e;
}

BoolExprPtr BoolExpr::make(Op op, BoolExprPtr a, BoolExprPtr b) {
  auto e = std::make_shared<BoolExpr>();
  e->op = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$' ||
         c == '#' || c == '\'';
}

Result<std::vector<std::string>> tokenize(const std::string& text, const BoolParseOptions& opts) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ident_char(c) && !std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      out.push_back(text.substr(start, i - start));
      continue;
    }
    if (c == '(' || c == ')' || c == '=') {
      out.push_back(std::string(1, c));
      ++i;
      continue;
    }
    if (c == '!') {
      out.push_back("!");
      ++i;
      continue;
    }
    if (c == '~') {
      if (!opts.allow_c_operators)
        return Result<std::vector<std::string>>::fail("operator ~ invalid; use !");
      out.push_back("!");
      ++i;
      continue;
    }
    if (c == '&') {
      if (i + 1 < text.size() && text[i + 1] == '&') {
        if (!opts.allow_c_operators)
          return Result<std::vector<std::string>>::fail("operator && invalid; use &");
        i += 2;
      } else {
        ++i;
      }
      out.push_back("&");
      continue;
    }
    if (c == '|') {
      if (i + 1 < text.size() && text[i + 1] == '|') {
        if (!opts.allow_c_operators)
          return Result<std::vector<std::string>>::fail("operator || invalid; use |");
        i += 2;
      } else {
        ++i;
      }
      out.push_back("|");
      continue;
    }
    if (c == '<' && i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
      out.push_back("<->");
      i += 3;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back("->");
      i += 2;
      continue;
    }
    return Result<std::vector<std::string>>::fail(std::string("unexpected character '") + c +
                                                  "' in boolean expression");
  }
  return Result<std::vector<std::string>>::ok(std::move(out));
}

struct Parser {
  const std::vector<std::string>& toks;
  size_t pos = 0;

  const std::string* peek() const { return pos < toks.size() ? &toks[pos] : nullptr; }
  bool eat(const std::string& t) {
    if (pos < toks.size() && toks[pos] == t) {
      ++pos;
      return true;
    }
    return false;
  }

  Result<BoolExprPtr> parse_implies() {
    auto lhs = parse_iff();
    if (!lhs) return lhs;
    if (eat("->")) {
      auto rhs = parse_implies();  // right associative
      if (!rhs) return rhs;
      return Result<BoolExprPtr>::ok(BoolExpr::make(BoolExpr::Op::Implies, lhs.take(), rhs.take()));
    }
    return lhs;
  }

  Result<BoolExprPtr> parse_iff() {
    auto lhs = parse_or();
    if (!lhs) return lhs;
    while (eat("<->")) {
      auto rhs = parse_or();
      if (!rhs) return rhs;
      lhs = Result<BoolExprPtr>::ok(BoolExpr::make(BoolExpr::Op::Iff, lhs.take(), rhs.take()));
    }
    return lhs;
  }

  Result<BoolExprPtr> parse_or() {
    auto lhs = parse_and();
    if (!lhs) return lhs;
    while (eat("|")) {
      auto rhs = parse_and();
      if (!rhs) return rhs;
      lhs = Result<BoolExprPtr>::ok(BoolExpr::make(BoolExpr::Op::Or, lhs.take(), rhs.take()));
    }
    return lhs;
  }

  Result<BoolExprPtr> parse_and() {
    auto lhs = parse_eq();
    if (!lhs) return lhs;
    while (eat("&")) {
      auto rhs = parse_eq();
      if (!rhs) return rhs;
      lhs = Result<BoolExprPtr>::ok(BoolExpr::make(BoolExpr::Op::And, lhs.take(), rhs.take()));
    }
    return lhs;
  }

  Result<BoolExprPtr> parse_eq() {
    auto lhs = parse_unary();
    if (!lhs) return lhs;
    while (eat("=")) {
      auto rhs = parse_unary();
      if (!rhs) return rhs;
      lhs = Result<BoolExprPtr>::ok(BoolExpr::make(BoolExpr::Op::Eq, lhs.take(), rhs.take()));
    }
    return lhs;
  }

  Result<BoolExprPtr> parse_unary() {
    if (eat("!")) {
      auto e = parse_unary();
      if (!e) return e;
      return Result<BoolExprPtr>::ok(BoolExpr::make(BoolExpr::Op::Not, e.take()));
    }
    if (eat("(")) {
      auto e = parse_implies();
      if (!e) return e;
      if (!eat(")")) return Result<BoolExprPtr>::fail("expected ')' in boolean expression");
      return e;
    }
    const std::string* t = peek();
    if (!t) return Result<BoolExprPtr>::fail("unexpected end of boolean expression");
    ++pos;
    if (*t == "TRUE") return Result<BoolExprPtr>::ok(BoolExpr::constant(true));
    if (*t == "FALSE") return Result<BoolExprPtr>::ok(BoolExpr::constant(false));
    if (*t == ")" || *t == "->" || *t == "<->" || *t == "&" || *t == "|" || *t == "=")
      return Result<BoolExprPtr>::fail("unexpected token '" + *t + "' in boolean expression");
    return Result<BoolExprPtr>::ok(BoolExpr::var(*t));
  }
};

int precedence(BoolExpr::Op op) {
  switch (op) {
    case BoolExpr::Op::Var:
    case BoolExpr::Op::Const:
      return 7;
    case BoolExpr::Op::Not:
      return 6;
    case BoolExpr::Op::Eq:
      return 5;
    case BoolExpr::Op::And:
      return 4;
    case BoolExpr::Op::Or:
      return 3;
    case BoolExpr::Op::Iff:
      return 2;
    case BoolExpr::Op::Implies:
      return 1;
  }
  return 0;
}

void print_into(const BoolExprPtr& e, int parent_prec, bool right_side, std::string& out) {
  int prec = precedence(e->op);
  switch (e->op) {
    case BoolExpr::Op::Var:
      out += e->name;
      return;
    case BoolExpr::Op::Const:
      out += e->value ? "TRUE" : "FALSE";
      return;
    case BoolExpr::Op::Not:
      out += '!';
      print_into(e->lhs, prec, false, out);
      return;
    default:
      break;
  }
  const char* sym = e->op == BoolExpr::Op::And       ? " & "
                    : e->op == BoolExpr::Op::Or      ? " | "
                    : e->op == BoolExpr::Op::Iff     ? " <-> "
                    : e->op == BoolExpr::Op::Implies ? " -> "
                                                     : " = ";
  bool need_parens = prec < parent_prec ||
                     (prec == parent_prec && (e->op == BoolExpr::Op::Implies ? !right_side : right_side));
  if (need_parens) out += '(';
  print_into(e->lhs, prec, false, out);
  out += sym;
  print_into(e->rhs, prec, true, out);
  if (need_parens) out += ')';
}

}  // namespace

Result<BoolExprPtr> parse_bool_expr(const std::string& text, const BoolParseOptions& opts) {
  auto toks = tokenize(text, opts);
  if (!toks) return Result<BoolExprPtr>::fail(toks.error());
  if (toks.value().empty()) return Result<BoolExprPtr>::fail("empty boolean expression");
  Parser p{toks.value()};
  auto e = p.parse_implies();
  if (!e) return e;
  if (p.pos != toks.value().size())
    return Result<BoolExprPtr>::fail("stray token '" + toks.value()[p.pos] +
                                     "' in boolean expression");
  return e;
}

std::string print_bool_expr(const BoolExprPtr& e) {
  std::string out;
  print_into(e, 0, false, out);
  return out;
}

Result<bool> eval_bool_expr(const BoolExprPtr& e,
                            const std::function<std::optional<bool>(const std::string&)>& lookup) {
  switch (e->op) {
    case BoolExpr::Op::Var: {
      auto v = lookup(e->name);
      if (!v) return Result<bool>::fail("undefined name: " + e->name);
      return Result<bool>::ok(*v);
    }
    case BoolExpr::Op::Const:
      return Result<bool>::ok(e->value);
    case BoolExpr::Op::Not: {
      auto v = eval_bool_expr(e->lhs, lookup);
      if (!v) return v;
      return Result<bool>::ok(!v.value());
    }
    default:
      break;
  }
  auto a = eval_bool_expr(e->lhs, lookup);
  if (!a) return a;
  auto b = eval_bool_expr(e->rhs, lookup);
  if (!b) return b;
  bool x = a.value(), y = b.value();
  switch (e->op) {
    case BoolExpr::Op::And:
      return Result<bool>::ok(x && y);
    case BoolExpr::Op::Or:
      return Result<bool>::ok(x || y);
    case BoolExpr::Op::Implies:
      return Result<bool>::ok(!x || y);
    case BoolExpr::Op::Iff:
    case BoolExpr::Op::Eq:
      return Result<bool>::ok(x == y);
    default:
      return Result<bool>::fail("malformed boolean expression node");
  }
}

void collect_bool_names(const BoolExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->op == BoolExpr::Op::Var) {
    out.insert(e->name);
    return;
  }
  collect_bool_names(e->lhs, out);
  collect_bool_names(e->rhs, out);
}

}  // namespace veriloop
