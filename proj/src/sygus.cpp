#include "veriloop/sygus.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <sstream>

namespace veriloop {

Value Value::of_bool(bool v) {
  Value x;
  x.kind = Kind::Bool;
  x.b = v;
  return x;
}

Value Value::of_int(BigInt v) {
  Value x;
  x.kind = Kind::Int;
  x.i = std::move(v);
  return x;
}

Value Value::of_bitvec(uint32_t width, uint64_t bits) {
  Value x;
  x.kind = Kind::BitVec;
  x.width = width;
  x.bits = width >= 64 ? bits : (bits & ((1ull << width) - 1));
  return x;
}

bool Value::operator==(const Value& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Kind::Bool:
      return b == other.b;
    case Kind::Int:
      return i == other.i;
    case Kind::BitVec:
      return width == other.width && bits == other.bits;
  }
  return false;
}

std::string Value::to_string() const {
  switch (kind) {
    case Kind::Bool:
      return b ? "true" : "false";
    case Kind::Int:
      return i.str();
    case Kind::BitVec:
      return "(_ bv" + std::to_string(bits) + " " + std::to_string(width) + ")";
  }
  return "?";
}

const CandidateDef* CandidateDefs::find(const std::string& name) const {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

namespace {

bool is_numeral(const std::string& s) {
  size_t start = (s.size() > 1 && s[0] == '-') ? 1 : 0;
  if (start >= s.size()) return false;
  for (size_t k = start; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  return true;
}

bool is_bv_literal_atom(const std::string& s) {
  if (s.size() < 3 || s[0] != '#') return false;
  if (s[1] == 'x') {
    for (size_t k = 2; k < s.size(); ++k)
      if (!std::isxdigit(static_cast<unsigned char>(s[k]))) return false;
    return true;
  }
  if (s[1] == 'b') {
    for (size_t k = 2; k < s.size(); ++k)
      if (s[k] != '0' && s[k] != '1') return false;
    return true;
  }
  return false;
}

const std::set<std::string>& builtin_ops() {
  static const std::set<std::string> ops = {
      "and",  "or",    "not",    "=>",     "xor",    "ite",    "=",      "distinct",
      "+",    "-",     "*",      "div",    "mod",    "abs",    "<",      "<=",
      ">",    ">=",    "bvadd",  "bvsub",  "bvmul",  "bvudiv", "bvurem", "bvand",
      "bvor", "bvxor", "bvnot",  "bvneg",  "bvshl",  "bvlshr", "bvult",  "bvule",
      "bvugt", "bvuge", "concat", "store",  "select", "str.++", "str.len", "str.at",
      "str.substr", "str.prefixof", "str.suffixof", "str.contains", "str.indexof",
      "str.replace", "str.to.int", "int.to.str", "str.to_int", "str.from_int"};
  return ops;
}

std::string sort_of(const Term& t) { return print_term(t); }

Result<std::vector<std::pair<std::string, SortName>>> parse_param_list(const Term& t,
                                                                       const char* what) {
  using R = Result<std::vector<std::pair<std::string, SortName>>>;
  if (!t.is_list()) return R::fail(std::string(what) + " must be a parenthesized list");
  std::vector<std::pair<std::string, SortName>> out;
  for (const Term& p : t.children) {
    if (!p.is_list() || p.children.size() != 2 || !p.children[0].is_atom())
      return R::fail(std::string(what) + " entries must be (name Sort) pairs");
    out.push_back({p.children[0].atom, sort_of(p.children[1])});
  }
  return R::ok(std::move(out));
}

Result<Grammar> parse_sygus_grammar(const Term& decls, const Term& groups) {
  using R = Result<Grammar>;
  Grammar g;
  if (!decls.is_list() || decls.children.empty())
    return R::fail("grammar nonterminal list must be nonempty");
  std::map<std::string, SortName> decl_sort;
  for (const Term& d : decls.children) {
    if (!d.is_list() || d.children.size() != 2 || !d.children[0].is_atom())
      return R::fail("grammar nonterminals must be (Name Sort) pairs");
    const std::string& name = d.children[0].atom;
    if (decl_sort.count(name)) return R::fail("duplicate grammar nonterminal: " + name);
    decl_sort[name] = sort_of(d.children[1]);
    g.nonterminals.push_back(name);
  }
  g.start = g.nonterminals.front();

  if (!groups.is_list()) return R::fail("grammar rule groups must be a list");
  for (const Term& group : groups.children) {
    if (!group.is_list() || group.children.size() != 3 || !group.children[0].is_atom())
      return R::fail("grammar rule groups must be (Name Sort (productions...))");
    const std::string& name = group.children[0].atom;
    auto it = decl_sort.find(name);
    if (it == decl_sort.end()) return R::fail("grammar group for undeclared nonterminal: " + name);
    if (sort_of(group.children[1]) != it->second)
      return R::fail("grammar group sort mismatch for " + name);
    if (!group.children[2].is_list())
      return R::fail("grammar productions for " + name + " must be a list");
    for (const Term& prod : group.children[2].children) {
      if (prod.is_list() && !prod.children.empty() && prod.children[0].is_atom() &&
          (prod.children[0].atom == "Constant" || prod.children[0].atom == "Variable"))
        return R::fail("unsupported feature: " + prod.children[0].atom + " grammar term");
      g.productions[name].push_back(prod);
    }
  }
  for (const auto& nt : g.nonterminals)
    if (!g.productions.count(nt))
      return R::fail("nonterminal " + nt + " has no production group");
  return validate_grammar(std::move(g));
}

// Checks that a constraint references only known names and functions.
Result<bool> check_term_names(const Term& t, const std::set<std::string>& names,
                              const std::set<std::string>& funs) {
  using R = Result<bool>;
  if (t.is_atom()) {
    const std::string& a = t.atom;
    if (is_numeral(a) || a == "true" || a == "false" || is_bv_literal_atom(a) ||
        is_string_atom(a) || names.count(a) || funs.count(a))
      return R::ok(true);
    return R::fail("unknown name: " + a);
  }
  if (t.children.empty()) return R::fail("empty application");
  const Term& head = t.children[0];
  if (head.is_atom()) {
    const std::string& h = head.atom;
    if (h == "_") {
      if (t.children.size() == 3 && t.children[1].is_atom() &&
          t.children[1].atom.rfind("bv", 0) == 0 && t.children[2].is_atom() &&
          is_numeral(t.children[2].atom))
        return R::ok(true);
      return R::fail("unsupported indexed identifier: " + print_term(t));
    }
    if (!builtin_ops().count(h) && !funs.count(h)) return R::fail("unknown function: " + h);
  } else {
    bool indexed = head.is_list() && head.children.size() >= 3 && head.children[0].is_atom() &&
                   head.children[0].atom == "_" && head.children[1].is_atom();
    std::string op = indexed ? head.children[1].atom : "";
    if (op != "extract" && op != "zero_extend" && op != "sign_extend")
      return R::fail("unsupported operator: " + print_term(head));
  }
  for (size_t k = 1; k < t.children.size(); ++k) {
    auto r = check_term_names(t.children[k], names, funs);
    if (!r) return r;
  }
  return R::ok(true);
}

}  // namespace

Result<SygusProblem> parse_sygus(const std::string& text) {
  using R = Result<SygusProblem>;
  auto cmds = parse_sexprs(text);
  if (!cmds) return R::fail(cmds.error());
  if (cmds.value().empty()) return R::fail("empty problem: no commands");

  static const std::set<std::string> unsupported = {
      "inv-constraint",  "synth-inv",        "declare-primed-var", "assume",
      "chc-constraint",  "declare-weight",   "optimize-synth",     "oracle-constraint",
      "declare-oracle-fun", "define-sort",   "declare-datatype",   "declare-datatypes",
      "set-feature",     "define-fun",       "declare-sort",       "set-option"};

  SygusProblem p;
  bool saw_logic = false, saw_check = false;
  for (size_t idx = 0; idx < cmds.value().size(); ++idx) {
    const Term& cmd = cmds.value()[idx];
    std::string pos = "command " + std::to_string(idx + 1);
    if (!cmd.is_list() || cmd.children.empty() || !cmd.children[0].is_atom())
      return R::fail(pos + ": malformed command " + print_term(cmd));
    const std::string& head = cmd.children[0].atom;
    if (head == "set-logic") {
      if (saw_logic) return R::fail(pos + ": multiple set-logic commands");
      if (cmd.children.size() != 2 || !cmd.children[1].is_atom())
        return R::fail(pos + ": set-logic expects one symbol");
      p.logic = cmd.children[1].atom;
      saw_logic = true;
    } else if (head == "synth-fun") {
      if (cmd.children.size() != 4 && cmd.children.size() != 6)
        return R::fail(pos + ": synth-fun expects name, parameters, sort, optional grammar");
      if (!cmd.children[1].is_atom()) return R::fail(pos + ": synth-fun name must be a symbol");
      SynthFun f;
      f.name = cmd.children[1].atom;
      auto params = parse_param_list(cmd.children[2], "synth-fun parameter list");
      if (!params) return R::fail(pos + ": " + params.error());
      f.params = params.take();
      f.return_sort = sort_of(cmd.children[3]);
      if (cmd.children.size() == 6) {
        auto g = parse_sygus_grammar(cmd.children[4], cmd.children[5]);
        if (!g) return R::fail(pos + ": " + g.error());
        f.grammar = g.take();
      }
      p.synth_funs.push_back(std::move(f));
    } else if (head == "declare-var") {
      if (cmd.children.size() != 3 || !cmd.children[1].is_atom())
        return R::fail(pos + ": declare-var expects a name and a sort");
      p.declared_vars.push_back({cmd.children[1].atom, sort_of(cmd.children[2])});
    } else if (head == "constraint") {
      if (cmd.children.size() != 2) return R::fail(pos + ": constraint expects one term");
      p.constraints.push_back(cmd.children[1]);
    } else if (head == "check-synth") {
      if (cmd.children.size() != 1) return R::fail(pos + ": check-synth takes no arguments");
      saw_check = true;
    } else if (unsupported.count(head)) {
      return R::fail(pos + ": unsupported feature: " + head);
    } else {
      return R::fail(pos + ": unknown command: " + head);
    }
  }
  if (!saw_check) return R::fail("missing check-synth command");
  if (p.synth_funs.empty()) return R::fail("no synth-fun command");

  std::set<std::string> names, funs;
  for (const auto& f : p.synth_funs) {
    if (!funs.insert(f.name).second) return R::fail("duplicate synth-fun name: " + f.name);
  }
  for (const auto& [n, s] : p.declared_vars) {
    (void)s;
    if (funs.count(n) || !names.insert(n).second) return R::fail("duplicate declared name: " + n);
  }
  for (const Term& c : p.constraints) {
    auto r = check_term_names(c, names, funs);
    if (!r) return R::fail("constraint " + print_term(c) + ": " + r.error());
  }
  return R::ok(std::move(p));
}

Result<CandidateDefs> parse_candidate_defs(const std::string& text) {
  using R = Result<CandidateDefs>;
  auto forms = parse_sexprs(text);
  if (!forms) return R::fail(forms.error());
  CandidateDefs out;
  for (const Term& form : forms.value()) {
    if (!form.is_list() || form.children.empty() || !form.children[0].is_atom() ||
        form.children[0].atom != "define-fun")
      return R::fail("expected define-fun, found " + print_term(form));
    if (form.children.size() != 5 || !form.children[1].is_atom())
      return R::fail("define-fun expects name, parameters, sort, body");
    CandidateDef d;
    d.name = form.children[1].atom;
    auto params = parse_param_list(form.children[2], "define-fun parameter list");
    if (!params) return R::fail(params.error());
    d.params = params.take();
    d.return_sort = sort_of(form.children[3]);
    d.body = form.children[4];
    out.defs.push_back(std::move(d));
  }
  if (out.defs.empty()) return R::fail("no define-fun found");
  return R::ok(std::move(out));
}

Result<bool> check_signature(const SygusProblem& problem, const CandidateDefs& candidate) {
  using R = Result<bool>;
  std::set<std::string> expected;
  for (const auto& f : problem.synth_funs) expected.insert(f.name);
  std::set<std::string> seen;
  for (const auto& d : candidate.defs) {
    if (!expected.count(d.name))
      return R::fail("helper function not allowed: " + d.name);
    if (!seen.insert(d.name).second) return R::fail("duplicate definition of " + d.name);
  }
  for (const auto& f : problem.synth_funs) {
    const CandidateDef* d = candidate.find(f.name);
    if (!d) return R::fail("missing definition for " + f.name);
    if (d->params.size() != f.params.size())
      return R::fail(f.name + ": parameter count " + std::to_string(d->params.size()) +
                     " does not match " + std::to_string(f.params.size()));
    for (size_t k = 0; k < f.params.size(); ++k) {
      if (d->params[k].first != f.params[k].first)
        return R::fail(f.name + ": parameter " + std::to_string(k + 1) + " is named '" +
                       d->params[k].first + "', expected '" + f.params[k].first + "'");
      if (d->params[k].second != f.params[k].second)
        return R::fail(f.name + ": parameter '" + f.params[k].first + "' has sort " +
                       d->params[k].second + ", expected " + f.params[k].second);
    }
    if (d->return_sort != f.return_sort)
      return R::fail(f.name + ": return sort " + d->return_sort + ", expected " + f.return_sort);
  }
  return R::ok(true);
}

Result<bool> check_grammar(const SygusProblem& problem, const CandidateDefs& candidate) {
  using R = Result<bool>;
  for (const auto& f : problem.synth_funs) {
    if (!f.grammar) continue;
    const CandidateDef* d = candidate.find(f.name);
    if (!d) return R::fail("missing definition for " + f.name);
    if (!derives(*f.grammar, f.grammar->start, d->body))
      return R::fail(f.name + ": body is not derivable from the grammar");
  }
  return R::ok(true);
}

namespace {

constexpr int kMaxCallDepth = 256;

uint64_t bv_mask(uint32_t width) {
  return width >= 64 ? ~0ull : ((1ull << width) - 1);
}

struct Evaluator {
  const CandidateDefs& defs;

  Result<Value> eval(const Term& t, const Env& env, int depth) const {
    using R = Result<Value>;
    if (depth > kMaxCallDepth) return R::fail("call depth exceeded");
    if (t.is_atom()) return eval_atom(t.atom, env, depth);

    if (t.children.empty()) return R::fail("empty application");
    const Term& head = t.children[0];
    if (head.is_list()) return eval_indexed(t, env, depth);

    const std::string& op = head.atom;
    if (op == "_") return bv_literal(t);
    if (op == "ite") {
      if (t.children.size() != 4) return R::fail("ite expects three arguments");
      auto c = eval(t.children[1], env, depth);
      if (!c) return c;
      if (c.value().kind != Value::Kind::Bool) return R::fail("ite condition is not boolean");
      return eval(t.children[c.value().b ? 2 : 3], env, depth);
    }

    const CandidateDef* d = defs.find(op);
    if (d) {
      if (t.children.size() - 1 != d->params.size())
        return R::fail(op + " applied to " + std::to_string(t.children.size() - 1) +
                       " arguments, expected " + std::to_string(d->params.size()));
      Env call_env;
      for (size_t k = 0; k < d->params.size(); ++k) {
        auto v = eval(t.children[k + 1], env, depth);
        if (!v) return v;
        call_env[d->params[k].first] = v.take();
      }
      return eval(d->body, call_env, depth + 1);
    }

    std::vector<Value> args;
    for (size_t k = 1; k < t.children.size(); ++k) {
      auto v = eval(t.children[k], env, depth);
      if (!v) return v;
      args.push_back(v.take());
    }
    return apply_builtin(op, args);
  }

  Result<Value> eval_atom(const std::string& a, const Env& env, int depth) const {
    using R = Result<Value>;
    if (a == "true") return R::ok(Value::of_bool(true));
    if (a == "false") return R::ok(Value::of_bool(false));
    if (is_string_atom(a)) return R::fail("string values require the external solver");
    if (is_numeral(a)) return R::ok(Value::of_int(BigInt(a)));
    if (is_bv_literal_atom(a)) {
      uint32_t width = a[1] == 'x' ? 4 * (a.size() - 2) : (a.size() - 2);
      if (width > 64) return R::fail("bitvector literal wider than 64 bits: " + a);
      uint64_t bits = 0;
      for (size_t k = 2; k < a.size(); ++k) {
        if (a[1] == 'x') {
          char c = static_cast<char>(std::tolower(static_cast<unsigned char>(a[k])));
          bits = bits * 16 + static_cast<uint64_t>(c <= '9' ? c - '0' : c - 'a' + 10);
        } else {
          bits = bits * 2 + static_cast<uint64_t>(a[k] - '0');
        }
      }
      return R::ok(Value::of_bitvec(width, bits));
    }
    auto it = env.find(a);
    if (it != env.end()) return R::ok(it->second);
    const CandidateDef* d = defs.find(a);
    if (d && d->params.empty()) return eval(d->body, Env{}, depth + 1);
    return R::fail("unbound name: " + a);
  }

  Result<Value> bv_literal(const Term& t) const {
    using R = Result<Value>;
    if (t.children.size() != 3 || !t.children[1].is_atom() || !t.children[2].is_atom() ||
        t.children[1].atom.rfind("bv", 0) != 0 || !is_numeral(t.children[2].atom))
      return R::fail("malformed bitvector literal: " + print_term(t));
    std::string mag = t.children[1].atom.substr(2);
    if (!is_numeral(mag) || mag.empty() || mag[0] == '-')
      return R::fail("malformed bitvector literal: " + print_term(t));
    uint64_t width = std::stoull(t.children[2].atom);
    if (width == 0 || width > 64)
      return R::fail("bitvector width out of range: " + t.children[2].atom);
    BigInt value(mag);
    BigInt modulus = BigInt(1) << static_cast<unsigned>(width);
    uint64_t bits = static_cast<uint64_t>(value % modulus);
    return R::ok(Value::of_bitvec(static_cast<uint32_t>(width), bits));
  }

  Result<Value> eval_indexed(const Term& t, const Env& env, int depth) const {
    using R = Result<Value>;
    const Term& head = t.children[0];
    bool shaped = head.children.size() >= 3 && head.children[0].is_atom() &&
                  head.children[0].atom == "_" && head.children[1].is_atom();
    if (!shaped) return R::fail("malformed application head: " + print_term(head));
    const std::string& op = head.children[1].atom;
    if (t.children.size() != 2) return R::fail(op + " expects one argument");
    auto arg = eval(t.children[1], env, depth);
    if (!arg) return arg;
    if (arg.value().kind != Value::Kind::BitVec)
      return R::fail(op + " expects a bitvector argument");
    const Value& x = arg.value();
    if (op == "extract") {
      if (head.children.size() != 4 || !is_numeral(head.children[2].atom) ||
          !is_numeral(head.children[3].atom))
        return R::fail("extract expects (_ extract hi lo)");
      uint64_t hi = std::stoull(head.children[2].atom);
      uint64_t lo = std::stoull(head.children[3].atom);
      if (lo > hi || hi >= x.width) return R::fail("extract indices out of range");
      uint32_t w = static_cast<uint32_t>(hi - lo + 1);
      return R::ok(Value::of_bitvec(w, (x.bits >> lo) & bv_mask(w)));
    }
    if (op == "zero_extend" || op == "sign_extend") {
      if (head.children.size() != 3 || !is_numeral(head.children[2].atom))
        return R::fail(op + " expects one index");
      uint64_t k = std::stoull(head.children[2].atom);
      if (x.width + k > 64) return R::fail(op + " result wider than 64 bits");
      uint32_t w = static_cast<uint32_t>(x.width + k);
      uint64_t bits = x.bits;
      if (op == "sign_extend" && x.width > 0 && ((x.bits >> (x.width - 1)) & 1))
        bits |= bv_mask(w) & ~bv_mask(x.width);
      return R::ok(Value::of_bitvec(w, bits));
    }
    return R::fail("unsupported indexed operator: " + op);
  }

  Result<Value> apply_builtin(const std::string& op, const std::vector<Value>& args) const {
    using R = Result<Value>;
    using K = Value::Kind;
    auto all_bool = [&] {
      for (const auto& v : args)
        if (v.kind != K::Bool) return false;
      return true;
    };
    auto all_int = [&] {
      for (const auto& v : args)
        if (v.kind != K::Int) return false;
      return true;
    };
    auto all_bv_same = [&] {
      for (const auto& v : args)
        if (v.kind != K::BitVec || v.width != args[0].width) return false;
      return !args.empty();
    };

    if (op == "and" || op == "or") {
      if (!all_bool()) return R::fail(op + " expects boolean arguments");
      bool acc = op == "and";
      for (const auto& v : args) acc = op == "and" ? (acc && v.b) : (acc || v.b);
      return R::ok(Value::of_bool(acc));
    }
    if (op == "not") {
      if (args.size() != 1 || args[0].kind != K::Bool) return R::fail("not expects one boolean");
      return R::ok(Value::of_bool(!args[0].b));
    }
    if (op == "=>") {
      if (args.size() < 2 || !all_bool()) return R::fail("=> expects boolean arguments");
      bool acc = args.back().b;
      for (size_t k = args.size() - 1; k-- > 0;) acc = !args[k].b || acc;
      return R::ok(Value::of_bool(acc));
    }
    if (op == "xor") {
      if (args.size() < 2 || !all_bool()) return R::fail("xor expects boolean arguments");
      bool acc = false;
      for (const auto& v : args) acc = acc != v.b;
      return R::ok(Value::of_bool(acc));
    }
    if (op == "=" || op == "distinct") {
      if (args.size() < 2) return R::fail(op + " expects at least two arguments");
      for (const auto& v : args)
        if (v.kind != args[0].kind || (v.kind == K::BitVec && v.width != args[0].width))
          return R::fail("sort clash in " + op);
      if (op == "=") {
        for (size_t k = 1; k < args.size(); ++k)
          if (!(args[k] == args[0])) return R::ok(Value::of_bool(false));
        return R::ok(Value::of_bool(true));
      }
      for (size_t a = 0; a < args.size(); ++a)
        for (size_t b = a + 1; b < args.size(); ++b)
          if (args[a] == args[b]) return R::ok(Value::of_bool(false));
      return R::ok(Value::of_bool(true));
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      if (args.size() < 2 || !all_int()) return R::fail(op + " expects integer arguments");
      for (size_t k = 1; k < args.size(); ++k) {
        const BigInt& a = args[k - 1].i;
        const BigInt& b = args[k].i;
        bool ok = op == "<" ? a < b : op == "<=" ? a <= b : op == ">" ? a > b : a >= b;
        if (!ok) return R::ok(Value::of_bool(false));
      }
      return R::ok(Value::of_bool(true));
    }
    if (op == "+" || op == "*") {
      if (args.empty() || !all_int()) return R::fail(op + " expects integer arguments");
      BigInt acc = args[0].i;
      for (size_t k = 1; k < args.size(); ++k) {
        if (op == "+")
          acc += args[k].i;
        else
          acc *= args[k].i;
      }
      return R::ok(Value::of_int(acc));
    }
    if (op == "-") {
      if (args.empty() || !all_int()) return R::fail("- expects integer arguments");
      if (args.size() == 1) return R::ok(Value::of_int(-args[0].i));
      BigInt acc = args[0].i;
      for (size_t k = 1; k < args.size(); ++k) acc -= args[k].i;
      return R::ok(Value::of_int(acc));
    }
    if (op == "div" || op == "mod") {
      if (args.size() != 2 || !all_int()) return R::fail(op + " expects two integers");
      const BigInt& x = args[0].i;
      const BigInt& y = args[1].i;
      if (y == 0) return R::ok(Value::of_int(op == "div" ? BigInt(0) : x));
      BigInt q = x / y, r = x % y;  // truncated toward zero
      if (r < 0) {
        if (y > 0) {
          q -= 1;
          r += y;
        } else {
          q += 1;
          r -= y;
        }
      }
      return R::ok(Value::of_int(op == "div" ? q : r));
    }
    if (op == "abs") {
      if (args.size() != 1 || args[0].kind != K::Int) return R::fail("abs expects one integer");
      return R::ok(Value::of_int(args[0].i < 0 ? -args[0].i : args[0].i));
    }

    if (op == "bvnot" || op == "bvneg") {
      if (args.size() != 1 || args[0].kind != K::BitVec)
        return R::fail(op + " expects one bitvector");
      uint64_t m = bv_mask(args[0].width);
      uint64_t bits = op == "bvnot" ? (~args[0].bits & m) : ((~args[0].bits + 1) & m);
      return R::ok(Value::of_bitvec(args[0].width, bits));
    }
    if (op == "concat") {
      if (args.size() != 2 || args[0].kind != K::BitVec || args[1].kind != K::BitVec)
        return R::fail("concat expects two bitvectors");
      uint32_t w = args[0].width + args[1].width;
      if (w > 64) return R::fail("concat result wider than 64 bits");
      return R::ok(Value::of_bitvec(w, (args[0].bits << args[1].width) | args[1].bits));
    }
    if (op.rfind("bv", 0) == 0) {
      if (args.size() != 2 || !all_bv_same())
        return R::fail(op + " expects two bitvectors of equal width");
      uint32_t w = args[0].width;
      uint64_t m = bv_mask(w);
      uint64_t a = args[0].bits, b = args[1].bits;
      if (op == "bvadd") return R::ok(Value::of_bitvec(w, (a + b) & m));
      if (op == "bvsub") return R::ok(Value::of_bitvec(w, (a - b) & m));
      if (op == "bvmul") return R::ok(Value::of_bitvec(w, (a * b) & m));
      if (op == "bvand") return R::ok(Value::of_bitvec(w, a & b));
      if (op == "bvor") return R::ok(Value::of_bitvec(w, a | b));
      if (op == "bvxor") return R::ok(Value::of_bitvec(w, a ^ b));
      if (op == "bvudiv") return R::ok(Value::of_bitvec(w, b == 0 ? m : a / b));
      if (op == "bvurem") return R::ok(Value::of_bitvec(w, b == 0 ? a : a % b));
      if (op == "bvshl") return R::ok(Value::of_bitvec(w, b >= w ? 0 : (a << b) & m));
      if (op == "bvlshr") return R::ok(Value::of_bitvec(w, b >= w ? 0 : a >> b));
      if (op == "bvult") return R::ok(Value::of_bool(a < b));
      if (op == "bvule") return R::ok(Value::of_bool(a <= b));
      if (op == "bvugt") return R::ok(Value::of_bool(a > b));
      if (op == "bvuge") return R::ok(Value::of_bool(a >= b));
    }
    if (op.rfind("str.", 0) == 0 || op == "int.to.str" || op == "store" || op == "select")
      return R::fail(op + " requires the external solver");
    return R::fail("unknown function: " + op);
  }
};

}  // namespace

Result<Value> eval_term(const Term& term, const Env& env, const CandidateDefs& defs) {
  Evaluator ev{defs};
  return ev.eval(term, env, 0);
}

namespace {

std::string describe_env(const SygusProblem& problem, const Env& env) {
  std::string out;
  for (const auto& [name, sort] : problem.declared_vars) {
    (void)sort;
    auto it = env.find(name);
    if (it == env.end()) continue;
    if (!out.empty()) out += ", ";
    out += name + "=" + it->second.to_string();
  }
  return out;
}

}  // namespace

Result<std::optional<Counterexample>> find_counterexample(const SygusProblem& problem,
                                                          const CandidateDefs& candidate,
                                                          const SearchSettings& settings) {
  using R = Result<std::optional<Counterexample>>;
  const long long B = settings.exhaustive_bound;

  struct VarDomain {
    std::string name;
    enum class Kind { Int, Bool, BitVec } kind;
    uint32_t width = 0;
    double size = 0;
  };
  std::vector<VarDomain> domains;
  bool exhaustible = true;
  double product = 1;
  for (const auto& [name, sort] : problem.declared_vars) {
    VarDomain d;
    d.name = name;
    if (sort == "Int") {
      d.kind = VarDomain::Kind::Int;
      d.size = 2.0 * static_cast<double>(B) + 1;
    } else if (sort == "Bool") {
      d.kind = VarDomain::Kind::Bool;
      d.size = 2;
    } else if (sort.rfind("(_ BitVec ", 0) == 0 && sort.back() == ')') {
      std::string w = sort.substr(10, sort.size() - 11);
      if (!is_numeral(w)) return R::fail("malformed bitvector sort: " + sort);
      d.kind = VarDomain::Kind::BitVec;
      d.width = static_cast<uint32_t>(std::stoul(w));
      if (d.width == 0 || d.width > 64)
        return R::fail("unsupported bitvector width in search: " + sort);
      if (d.width <= 8)
        d.size = static_cast<double>(1u << d.width);
      else
        exhaustible = false;
    } else {
      return R::fail("unsupported sort for internal search: " + sort);
    }
    product *= d.size > 0 ? d.size : 1;
    domains.push_back(d);
  }

  auto test = [&](const Env& env) -> Result<std::optional<Counterexample>> {
    for (size_t c = 0; c < problem.constraints.size(); ++c) {
      auto v = eval_term(problem.constraints[c], env, candidate);
      if (!v)
        return R::fail("evaluation failed under {" + describe_env(problem, env) +
                       "}: " + v.error());
      if (v.value().kind != Value::Kind::Bool)
        return R::fail("constraint " + std::to_string(c + 1) + " is not boolean");
      if (!v.value().b) return R::ok(Counterexample{env, c});
    }
    return R::ok(std::nullopt);
  };

  if (exhaustible && product <= 1e6) {
    std::vector<uint64_t> idx(domains.size(), 0);
    auto value_of = [&](size_t k) -> Value {
      const VarDomain& d = domains[k];
      switch (d.kind) {
        case VarDomain::Kind::Int:
          return Value::of_int(BigInt(-B) + BigInt(idx[k]));
        case VarDomain::Kind::Bool:
          return Value::of_bool(idx[k] != 0);
        case VarDomain::Kind::BitVec:
          return Value::of_bitvec(d.width, idx[k]);
      }
      return Value::of_bool(false);
    };
    while (true) {
      Env env;
      for (size_t k = 0; k < domains.size(); ++k) env[domains[k].name] = value_of(k);
      auto r = test(env);
      if (!r || r.value().has_value()) return r;
      size_t k = domains.size();
      while (k-- > 0) {
        if (++idx[k] < static_cast<uint64_t>(domains[k].size)) break;
        idx[k] = 0;
        if (k == 0) return R::ok(std::nullopt);
      }
      if (domains.empty()) return R::ok(std::nullopt);
    }
  }

  std::mt19937_64 rng(settings.seed);
  for (int sample = 0; sample < settings.random_samples; ++sample) {
    Env env;
    for (const auto& d : domains) {
      switch (d.kind) {
        case VarDomain::Kind::Int: {
          uint64_t span = static_cast<uint64_t>(2 * B + 1);
          env[d.name] = Value::of_int(BigInt(-B) + BigInt(rng() % span));
          break;
        }
        case VarDomain::Kind::Bool:
          env[d.name] = Value::of_bool(rng() & 1);
          break;
        case VarDomain::Kind::BitVec:
          env[d.name] = Value::of_bitvec(d.width, rng() & bv_mask(d.width));
          break;
      }
    }
    auto r = test(env);
    if (!r || r.value().has_value()) return r;
  }
  return R::ok(std::nullopt);
}

namespace {

bool mentions_op(const Term& t, const std::set<std::string>& ops) {
  if (t.is_atom()) return ops.count(t.atom) > 0;
  for (const Term& c : t.children)
    if (mentions_op(c, ops)) return true;
  return false;
}

}  // namespace

std::string emit_smt_query(const SygusProblem& problem, const CandidateDefs& candidate) {
  std::ostringstream out;
  if (!problem.logic.empty()) out << "(set-logic " << problem.logic << ")\n";

  bool uses_divmod = false;
  for (const Term& c : problem.constraints)
    if (mentions_op(c, {"div", "mod"})) uses_divmod = true;
  for (const auto& d : candidate.defs)
    if (mentions_op(d.body, {"div", "mod"})) uses_divmod = true;
  if (uses_divmod)
    out << "; internal evaluator totalizes (div x 0) = 0 and (mod x 0) = x\n";

  for (const auto& d : candidate.defs) {
    out << "(define-fun " << d.name << " (";
    for (size_t k = 0; k < d.params.size(); ++k) {
      if (k) out << " ";
      out << "(" << d.params[k].first << " " << d.params[k].second << ")";
    }
    out << ") " << d.return_sort << " " << print_term(d.body) << ")\n";
  }
  for (const auto& [name, sort] : problem.declared_vars)
    out << "(declare-const " << name << " " << sort << ")\n";

  out << "(assert (not ";
  if (problem.constraints.empty()) {
    out << "true";
  } else if (problem.constraints.size() == 1) {
    out << print_term(problem.constraints[0]);
  } else {
    out << "(and";
    for (const Term& c : problem.constraints) out << " " << print_term(c);
    out << ")";
  }
  out << "))\n(check-sat)\n";
  return out.str();
}

}  // namespace veriloop
