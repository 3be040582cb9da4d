#include "veriloop/sketch_lisp.hpp"

#include <cctype>
#include <set>

namespace veriloop {

namespace {

bool is_numeral(const std::string& s) {
  size_t start = (s.size() > 1 && s[0] == '-') ? 1 : 0;
  if (start >= s.size()) return false;
  for (size_t k = start; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  return true;
}

Result<std::string> text_block(const Term& section, const std::string& name) {
  using R = Result<std::string>;
  std::string out;
  for (size_t k = 1; k < section.children.size(); ++k) {
    const Term& part = section.children[k];
    if (!part.is_atom() || !is_string_atom(part.atom))
      return R::fail(name + " section expects string literals");
    if (!out.empty()) out += "\n";
    out += string_atom_value(part.atom);
  }
  return R::ok(std::move(out));
}

const std::set<std::string>& define_heads() {
  static const std::set<std::string> heads = {"defunc", "definec", "defun", "define"};
  return heads;
}

// Parameter lists may carry :type keywords (ignored for arity counting).
std::vector<std::string> plain_params(const Term& params) {
  std::vector<std::string> out;
  for (const Term& p : params.children)
    if (p.is_atom() && !p.atom.empty() && p.atom[0] != ':') out.push_back(p.atom);
  return out;
}

}  // namespace

Result<LispBenchmark> parse_lisp_bundle(const std::string& text) {
  using R = Result<LispBenchmark>;
  auto forms = parse_sexprs(text);
  if (!forms) return R::fail(forms.error());
  LispBenchmark b;
  for (const Term& section : forms.value()) {
    if (!section.is_list() || section.children.empty() || !section.children[0].is_atom())
      return R::fail("bundle sections must be lists headed by a symbol");
    const std::string& head = section.children[0].atom;
    if (head == "signatures") {
      for (size_t k = 1; k < section.children.size(); ++k) {
        const Term& s = section.children[k];
        if (!s.is_list() || s.children.size() != 3 || !s.children[0].is_atom() ||
            !s.children[1].is_atom() || !s.children[2].is_list())
          return R::fail("signatures entries must be (name arity (params...))");
        FunctionSignature sig;
        sig.name = s.children[0].atom;
        if (!is_numeral(s.children[1].atom))
          return R::fail("signature arity must be a number: " + sig.name);
        sig.arity = std::stoi(s.children[1].atom);
        for (const Term& p : s.children[2].children) {
          if (!p.is_atom()) return R::fail("signature parameters must be symbols");
          sig.param_names.push_back(p.atom);
        }
        if (static_cast<int>(sig.param_names.size()) != sig.arity)
          return R::fail("signature " + sig.name + " declares arity " +
                         std::to_string(sig.arity) + " but lists " +
                         std::to_string(sig.param_names.size()) + " parameters");
        b.signatures.push_back(std::move(sig));
      }
    } else if (head == "primitives") {
      for (size_t k = 1; k < section.children.size(); ++k) {
        const Term& p = section.children[k];
        if (!p.is_list() || p.children.size() != 2 || !p.children[0].is_atom() ||
            !p.children[1].is_atom() || !is_numeral(p.children[1].atom))
          return R::fail("primitives entries must be (name arity)");
        b.primitives[p.children[0].atom] = std::stoi(p.children[1].atom);
      }
    } else if (head == "terminals") {
      for (size_t k = 1; k < section.children.size(); ++k) {
        if (!section.children[k].is_atom()) return R::fail("terminals must be symbols");
        b.terminals.push_back(section.children[k].atom);
      }
    } else if (head == "strict-terminals") {
      b.strict_terminals = true;
    } else {
      std::string* slot = nullptr;
      if (head == "properties") slot = &b.properties_text;
      else if (head == "io-examples") slot = &b.io_examples_text;
      else if (head == "datatypes") slot = &b.datatypes_text;
      else if (head == "definitions") slot = &b.definitions_text;
      else if (head == "sketches") slot = &b.sketches_text;
      else if (head == "grammar") slot = &b.grammar_text;
      if (!slot) return R::fail("unknown bundle section: " + head);
      auto block = text_block(section, head);
      if (!block) return R::fail(block.error());
      *slot = block.take();
    }
  }
  for (const auto& sig : b.signatures)
    if (b.primitives.count(sig.name))
      return R::fail("signature name collides with a primitive: " + sig.name);
  return R::ok(std::move(b));
}

namespace {

Result<bool> check_body(const Term& t, const std::set<std::string>& scope,
                        const LispBenchmark& b) {
  using R = Result<bool>;
  if (t.is_atom()) {
    const std::string& a = t.atom;
    if (is_numeral(a) || a == "t" || a == "nil" || is_string_atom(a) || scope.count(a))
      return R::ok(true);
    for (const auto& term : b.terminals)
      if (term == a) return R::ok(true);
    if (b.strict_terminals) return R::fail("unknown terminal: " + a);
    return R::ok(true);
  }
  if (t.children.empty()) return R::fail("empty application");
  if (!t.children[0].is_atom())
    return R::fail("application head must be a symbol: " + print_term(t.children[0]));
  const std::string& h = t.children[0].atom;
  int arity = -1;
  if (h == "if") {
    arity = 3;
  } else {
    for (const auto& sig : b.signatures)
      if (sig.name == h) arity = sig.arity;
    auto prim = b.primitives.find(h);
    if (arity < 0 && prim != b.primitives.end()) arity = prim->second;
  }
  if (arity < 0) return R::fail("unknown function: " + h);
  int given = static_cast<int>(t.children.size()) - 1;
  if (given != arity)
    return R::fail(h + " applied to " + std::to_string(given) + " arguments, expected " +
                   std::to_string(arity));
  for (size_t k = 1; k < t.children.size(); ++k) {
    auto r = check_body(t.children[k], scope, b);
    if (!r) return r;
  }
  return R::ok(true);
}

}  // namespace

Result<bool> validate_candidate(const std::vector<Term>& candidates,
                                const LispBenchmark& benchmark) {
  using R = Result<bool>;
  std::map<std::string, const Term*> defs;
  for (const Term& c : candidates) {
    if (!c.is_list() || c.children.size() < 4 || !c.children[0].is_atom() ||
        !define_heads().count(c.children[0].atom))
      return R::fail("candidates must be function definitions, found " + print_term(c));
    if (!c.children[1].is_atom()) return R::fail("definition name must be a symbol");
    const std::string& name = c.children[1].atom;
    if (!c.children[2].is_list()) return R::fail(name + ": parameter list expected");
    if (defs.count(name)) return R::fail("duplicate definition of " + name);
    defs[name] = &c;
  }
  for (const auto& [name, def] : defs) {
    bool declared = false;
    for (const auto& sig : benchmark.signatures) declared = declared || sig.name == name;
    if (!declared) return R::fail("definition of undeclared function " + name);
    (void)def;
  }
  for (const auto& sig : benchmark.signatures) {
    auto it = defs.find(sig.name);
    if (it == defs.end()) return R::fail("missing definition for " + sig.name);
    const Term& def = *it->second;
    std::vector<std::string> params = plain_params(def.children[2]);
    if (static_cast<int>(params.size()) != sig.arity)
      return R::fail(sig.name + " defined with " + std::to_string(params.size()) +
                     " parameters, expected " + std::to_string(sig.arity));
    std::set<std::string> scope(params.begin(), params.end());
    // Everything after the parameter list is body material (definec-style
    // forms put a return type atom there; atoms starting with ':' pass).
    for (size_t k = 3; k < def.children.size(); ++k) {
      const Term& part = def.children[k];
      if (part.is_atom() && !part.atom.empty() && part.atom[0] == ':') continue;
      auto r = check_body(part, scope, benchmark);
      if (!r) return r;
    }
  }
  return R::ok(true);
}

Result<Verdict> verify_with_cgen(const std::vector<Term>& candidates,
                                 const LispBenchmark& benchmark, const Adapter& adapter,
                                 double deadline_secs) {
  using R = Result<Verdict>;
  std::string payload;
  auto append = [&payload](const std::string& block) {
    if (block.empty()) return;
    if (!payload.empty()) payload += "\n";
    payload += block;
  };
  append(benchmark.datatypes_text);
  append(benchmark.definitions_text);
  for (const Term& c : candidates) append(print_term(c));
  append(benchmark.properties_text);
  append(benchmark.io_examples_text);

  AdapterRequest request;
  request.payload = payload;
  request.deadline_secs = deadline_secs;
  auto response = adapter(request);
  if (!response) return R::fail(response.error());
  switch (response.value().status) {
    case AdapterResponse::Status::Pass:
      return R::ok(Verdict::pass());
    case AdapterResponse::Status::Fail:
      return R::ok(Verdict::semantic_fail(response.value().detail));
    case AdapterResponse::Status::Timeout:
      return R::ok(Verdict::verify_timeout("counterexample generator hit the deadline"));
  }
  return R::fail("unrecognized adapter status");
}

}  // namespace veriloop
