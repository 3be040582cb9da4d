#include "veriloop/smv.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace veriloop {

const BoolExprPtr* SmvModule::find_init(const std::string& var) const {
  for (const auto& [n, e] : init_assigns)
    if (n == var) return &e;
  return nullptr;
}

const BoolExprPtr* SmvModule::find_next(const std::string& var) const {
  for (const auto& [n, e] : next_assigns)
    if (n == var) return &e;
  return nullptr;
}

const BoolExprPtr* SmvModule::find_define(const std::string& name) const {
  for (const auto& [n, e] : defines)
    if (n == name) return &e;
  return nullptr;
}

std::vector<std::string> tokenize_smv(const std::string& text) {
  std::vector<std::string> out;
  size_t i = 0;
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$' ||
           c == '#';
  };
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
    if (ident_char(c)) {
      size_t start = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      out.push_back(text.substr(start, i - start));
      continue;
    }
    if (c == ':' && i + 1 < text.size() && text[i + 1] == '=') {
      out.push_back(":=");
      i += 2;
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
    if (c == '&' && i + 1 < text.size() && text[i + 1] == '&') {
      out.push_back("&&");
      i += 2;
      continue;
    }
    if (c == '|' && i + 1 < text.size() && text[i + 1] == '|') {
      out.push_back("||");
      i += 2;
      continue;
    }
    out.push_back(std::string(1, c));
    ++i;
  }
  return out;
}

namespace {

const std::set<std::string> kSectionKeywords = {
    "MODULE", "IVAR",    "VAR",     "FROZENVAR", "ASSIGN",  "DEFINE",
    "INIT",   "TRANS",   "INVAR",   "CTLSPEC",   "LTLSPEC", "SPEC",
    "JUSTICE", "FAIRNESS", "COMPASSION"};

bool is_identifier(const std::string& t) {
  if (t.empty()) return false;
  char c = t[0];
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

struct ModuleParser {
  const std::vector<std::string>& toks;
  size_t pos;
  SmvModule m;

  void issue(SmvIssueKind kind, const std::string& msg) { m.issues.push_back({kind, msg}); }

  const std::string* peek() const { return pos < toks.size() ? &toks[pos] : nullptr; }
  bool at_section() const {
    const std::string* t = peek();
    return t && kSectionKeywords.count(*t) > 0;
  }
  bool eat(const std::string& t) {
    if (pos < toks.size() && toks[pos] == t) {
      ++pos;
      return true;
    }
    return false;
  }

  // Joins tokens until an unnested ';'; consumes the ';'.
  std::string text_until_semicolon() {
    std::string out;
    int depth = 0;
    while (pos < toks.size()) {
      const std::string& t = toks[pos];
      if (t == ";" && depth == 0) {
        ++pos;
        return out;
      }
      if (t == "MODULE") return out;  // unterminated entry
      if (t == "(") ++depth;
      if (t == ")") --depth;
      if (!out.empty()) out += ' ';
      out += t;
      ++pos;
    }
    return out;
  }

  BoolExprPtr parse_expr_text(const std::string& text, const std::string& where) {
    if (text.find("&&") != std::string::npos)
      issue(SmvIssueKind::Style, "operator && invalid in " + where + "; use &");
    if (text.find("||") != std::string::npos)
      issue(SmvIssueKind::Style, "operator || invalid in " + where + "; use |");
    if (text.find('~') != std::string::npos)
      issue(SmvIssueKind::Style, "operator ~ invalid in " + where + "; use !");
    BoolParseOptions opts;
    opts.allow_c_operators = true;
    auto e = parse_bool_expr(text, opts);
    if (!e) {
      issue(SmvIssueKind::Structure, where + ": " + e.error());
      return BoolExpr::constant(false);
    }
    return e.take();
  }

  void parse_var_section(bool inputs) {
    while (pos < toks.size() && !at_section()) {
      if (!is_identifier(toks[pos])) {
        issue(SmvIssueKind::Structure, "expected a variable name, found '" + toks[pos] + "'");
        ++pos;
        continue;
      }
      SmvVarDecl d;
      d.name = toks[pos++];
      if (!eat(":")) {
        issue(SmvIssueKind::Structure, "declaration of " + d.name + " is missing ':'");
        text_until_semicolon();
        continue;
      }
      std::string type = text_until_semicolon();
      d.type_text = type;
      if (type == "boolean") {
        d.is_boolean = true;
      } else {
        size_t paren = type.find('(');
        std::string head = paren == std::string::npos ? type : type.substr(0, paren);
        while (!head.empty() && head.back() == ' ') head.pop_back();
        if (paren != std::string::npos && is_identifier(head)) {
          d.is_instance = true;
          d.instance_module = head;
          std::string args = type.substr(paren + 1);
          if (!args.empty() && args.back() == ')') args.pop_back();
          std::string cur;
          std::istringstream ss(args);
          std::string tok;
          while (ss >> tok) {
            if (tok == ",") continue;
            std::string clean;
            for (char c : tok)
              if (c != ',') clean += c;
            if (!clean.empty()) d.instance_args.push_back(clean);
          }
        }
      }
      (inputs ? m.ivars : m.vars).push_back(std::move(d));
    }
  }

  void parse_assign_section() {
    while (pos < toks.size() && !at_section()) {
      const std::string& t = toks[pos];
      if (t == "init" || t == "next") {
        std::string kind = t;
        ++pos;
        if (!eat("(")) {
          issue(SmvIssueKind::Structure, kind + " assignment is missing '('");
          text_until_semicolon();
          continue;
        }
        std::string var = pos < toks.size() ? toks[pos++] : "";
        if (!eat(")")) {
          issue(SmvIssueKind::Structure, kind + "(" + var + " is missing ')'");
          text_until_semicolon();
          continue;
        }
        if (!eat(":=")) {
          issue(SmvIssueKind::Structure, kind + "(" + var + ") is missing ':='");
          text_until_semicolon();
          continue;
        }
        auto expr = parse_expr_text(text_until_semicolon(), kind + "(" + var + ")");
        if (kind == "init")
          m.init_assigns.push_back({var, expr});
        else
          m.next_assigns.push_back({var, expr});
      } else if (is_identifier(t)) {
        std::string var = t;
        ++pos;
        issue(SmvIssueKind::Structure,
              "immediate assignment to " + var + " in ASSIGN; use init()/next()");
        if (eat(":=")) text_until_semicolon();
      } else {
        issue(SmvIssueKind::Structure, "unexpected token '" + t + "' in ASSIGN");
        ++pos;
      }
    }
  }

  void parse_define_section() {
    while (pos < toks.size() && !at_section()) {
      if (!is_identifier(toks[pos])) {
        issue(SmvIssueKind::Structure, "unexpected token '" + toks[pos] + "' in DEFINE");
        ++pos;
        continue;
      }
      std::string name = toks[pos++];
      if (!eat(":=")) {
        issue(SmvIssueKind::Structure, "define " + name + " is missing ':='");
        text_until_semicolon();
        continue;
      }
      m.defines.push_back({name, parse_expr_text(text_until_semicolon(), "define " + name)});
    }
  }

  void skip_section_body() {
    while (pos < toks.size() && !at_section()) ++pos;
  }

  std::string capture_spec() {
    std::string out;
    while (pos < toks.size() && !at_section()) {
      if (!out.empty()) out += ' ';
      out += toks[pos++];
    }
    return out;
  }

  // Parses one module starting at the MODULE keyword.
  void run() {
    eat("MODULE");
    if (pos < toks.size() && is_identifier(toks[pos])) {
      m.name = toks[pos++];
    } else {
      issue(SmvIssueKind::Structure, "MODULE is missing a name");
    }
    if (eat("(")) {
      while (pos < toks.size() && toks[pos] != ")") {
        if (toks[pos] != ",") m.params.push_back(toks[pos]);
        ++pos;
      }
      eat(")");
    }
    while (pos < toks.size() && toks[pos] != "MODULE") {
      std::string section = toks[pos];
      if (!kSectionKeywords.count(section)) {
        issue(SmvIssueKind::Structure, "unexpected token '" + section + "' outside any section");
        ++pos;
        continue;
      }
      ++pos;
      if (section == "IVAR") {
        parse_var_section(true);
      } else if (section == "VAR") {
        parse_var_section(false);
      } else if (section == "ASSIGN") {
        parse_assign_section();
      } else if (section == "DEFINE") {
        parse_define_section();
      } else if (section == "CTLSPEC" || section == "LTLSPEC" || section == "SPEC") {
        m.specs.push_back(section + " " + capture_spec());
      } else {
        issue(SmvIssueKind::Structure, section + " section present; not part of the subset");
        skip_section_body();
      }
    }
  }
};

// Post-parse structural analysis; appends issues to the module.
void analyze_module(SmvModule& m, bool allow_instances) {
  std::set<std::string> ivar_names, var_names, define_names, param_names, instance_names;
  std::set<std::string> all_decls;
  for (const auto& p : m.params) param_names.insert(p);
  for (const auto& d : m.ivars) {
    if (!all_decls.insert(d.name).second)
      m.issues.push_back({SmvIssueKind::Structure, "duplicate declaration: " + d.name});
    ivar_names.insert(d.name);
    if (!d.is_boolean)
      m.issues.push_back(
          {SmvIssueKind::Typing, "input variable " + d.name + " has non-boolean type " + d.type_text});
  }
  for (const auto& d : m.vars) {
    if (!all_decls.insert(d.name).second)
      m.issues.push_back({SmvIssueKind::Structure, "duplicate declaration: " + d.name});
    var_names.insert(d.name);
    if (d.is_instance) {
      instance_names.insert(d.name);
      if (!allow_instances)
        m.issues.push_back({SmvIssueKind::Typing,
                            "variable " + d.name + " has non-boolean type " + d.type_text});
    } else if (!d.is_boolean) {
      m.issues.push_back(
          {SmvIssueKind::Typing, "variable " + d.name + " has non-boolean type " + d.type_text});
    }
  }
  for (const auto& [n, e] : m.defines) {
    (void)e;
    if (define_names.count(n))
      m.issues.push_back({SmvIssueKind::Structure, "duplicate define: " + n});
    if (all_decls.count(n))
      m.issues.push_back(
          {SmvIssueKind::Structure, "define " + n + " collides with a declared variable"});
    define_names.insert(n);
  }

  auto known_name = [&](const std::string& n) {
    if (ivar_names.count(n) || param_names.count(n) || define_names.count(n)) return true;
    if (var_names.count(n)) return true;
    size_t dot = n.find('.');
    if (dot != std::string::npos && instance_names.count(n.substr(0, dot))) return true;
    return false;
  };

  auto check_names = [&](const BoolExprPtr& e, const std::string& where) {
    std::set<std::string> names;
    collect_bool_names(e, names);
    for (const auto& n : names) {
      if (!known_name(n))
        m.issues.push_back({SmvIssueKind::Structure, "undefined name " + n + " in " + where});
    }
  };

  // init/next bookkeeping per state variable
  std::map<std::string, int> init_count, next_count;
  for (const auto& [n, e] : m.init_assigns) {
    ++init_count[n];
    check_names(e, "init(" + n + ")");
    if (ivar_names.count(n))
      m.issues.push_back({SmvIssueKind::Structure, "init() assignment to input variable " + n});
    else if (!var_names.count(n))
      m.issues.push_back({SmvIssueKind::Structure, "init() assignment to undeclared variable " + n});
  }
  for (const auto& [n, e] : m.next_assigns) {
    ++next_count[n];
    check_names(e, "next(" + n + ")");
    if (ivar_names.count(n))
      m.issues.push_back({SmvIssueKind::Structure, "next() assignment to input variable " + n});
    else if (!var_names.count(n))
      m.issues.push_back({SmvIssueKind::Structure, "next() assignment to undeclared variable " + n});
  }
  for (const auto& d : m.vars) {
    if (d.is_instance) continue;
    if (init_count[d.name] == 0)
      m.issues.push_back({SmvIssueKind::Structure, "variable " + d.name + " has no init() assignment"});
    if (init_count[d.name] > 1)
      m.issues.push_back(
          {SmvIssueKind::Structure, "variable " + d.name + " has multiple init() assignments"});
    if (next_count[d.name] == 0)
      m.issues.push_back({SmvIssueKind::Structure, "variable " + d.name + " has no next() assignment"});
    if (next_count[d.name] > 1)
      m.issues.push_back(
          {SmvIssueKind::Structure, "variable " + d.name + " has multiple next() assignments"});
  }

  for (const auto& [n, e] : m.defines) check_names(e, "define " + n);

  // Cycles among defines: depth-first walk over define-to-define references.
  std::map<std::string, int> color;  // 0 new, 1 active, 2 done
  std::function<bool(const std::string&)> cyclic = [&](const std::string& n) -> bool {
    color[n] = 1;
    const BoolExprPtr* e = m.find_define(n);
    if (e) {
      std::set<std::string> names;
      collect_bool_names(*e, names);
      for (const auto& ref : names) {
        if (!define_names.count(ref)) continue;
        int c = color.count(ref) ? color[ref] : 0;
        if (c == 1) return true;
        if (c == 0 && cyclic(ref)) return true;
      }
    }
    color[n] = 2;
    return false;
  };
  for (const auto& [n, e] : m.defines) {
    (void)e;
    if ((color.count(n) ? color[n] : 0) == 0 && cyclic(n)) {
      m.issues.push_back({SmvIssueKind::Structure, "circular define chain involving " + n});
      break;
    }
  }
}

Result<SmvModule> parse_single(const std::string& text, bool strict) {
  auto toks = tokenize_smv(text);
  if (toks.empty()) return Result<SmvModule>::fail("empty module text");
  if (toks[0] != "MODULE") return Result<SmvModule>::fail("module text must start with MODULE");
  ModuleParser p{toks, 0, {}};
  p.run();
  SmvModule m = std::move(p.m);
  if (p.pos < toks.size())
    m.issues.push_back({SmvIssueKind::Structure, "multiple MODULE declarations in one candidate"});
  if (m.name != "main")
    m.issues.push_back({SmvIssueKind::Structure, "module must be named main, found '" + m.name + "'"});
  analyze_module(m, false);
  if (strict && m.has_issues()) return Result<SmvModule>::fail(m.issues.front().message);
  return Result<SmvModule>::ok(std::move(m));
}

}  // namespace

Result<SmvModule> parse_smv_subset(const std::string& text) { return parse_single(text, true); }

Result<SmvModule> parse_smv_lenient(const std::string& text) { return parse_single(text, false); }

Result<std::vector<SmvModule>> parse_smv_modules(const std::string& text) {
  auto toks = tokenize_smv(text);
  if (toks.empty() || toks[0] != "MODULE")
    return Result<std::vector<SmvModule>>::fail("file must start with MODULE");
  std::vector<SmvModule> out;
  size_t pos = 0;
  while (pos < toks.size()) {
    ModuleParser p{toks, pos, {}};
    p.run();
    pos = p.pos;
    analyze_module(p.m, true);
    out.push_back(std::move(p.m));
  }
  return Result<std::vector<SmvModule>>::ok(std::move(out));
}

SmvSanityReport sanity_check_smv(const SmvModule& module, const TlsfInterface& iface) {
  SmvSanityReport report;
  report.structure_ok = true;
  report.boolean_ok = true;
  for (const auto& issue : module.issues) {
    if (issue.kind == SmvIssueKind::Typing) {
      report.boolean_ok = false;
    } else if (issue.kind == SmvIssueKind::Structure) {
      report.structure_ok = false;
    }
    report.notes.push_back(issue.message);
  }

  std::set<std::string> ivars, defines, want_in(iface.inputs.begin(), iface.inputs.end()),
      want_out(iface.outputs.begin(), iface.outputs.end());
  for (const auto& d : module.ivars) ivars.insert(d.name);
  for (const auto& [n, e] : module.defines) {
    (void)e;
    defines.insert(n);
  }
  report.io_mapping_ok = (ivars == want_in) && (defines == want_out);
  if (ivars != want_in)
    report.notes.push_back("IVAR names do not match the interface input list");
  if (defines != want_out)
    report.notes.push_back("DEFINE names do not match the interface output list");
  return report;
}

std::string self_compose(const SmvModule& module, const std::string& submodule_name) {
  std::ostringstream out;
  std::string params;
  for (size_t i = 0; i < module.ivars.size(); ++i) {
    if (i) params += ", ";
    params += module.ivars[i].name;
  }

  out << "MODULE " << submodule_name;
  if (!module.ivars.empty()) out << "(" << params << ")";
  out << "\n";

  std::vector<std::string> state_vars;
  for (const auto& d : module.vars)
    if (!d.is_instance) state_vars.push_back(d.name);

  if (!state_vars.empty()) {
    out << "VAR\n";
    for (const auto& v : state_vars) out << "  " << v << " : boolean;\n";
    out << "ASSIGN\n";
    for (const auto& v : state_vars) {
      if (const BoolExprPtr* e = module.find_init(v))
        out << "  init(" << v << ") := " << print_bool_expr(*e) << ";\n";
      if (const BoolExprPtr* e = module.find_next(v))
        out << "  next(" << v << ") := " << print_bool_expr(*e) << ";\n";
    }
  }
  if (!module.defines.empty()) {
    out << "DEFINE\n";
    for (const auto& [n, e] : module.defines)
      out << "  " << n << " := " << print_bool_expr(e) << ";\n";
  }

  out << "\nMODULE main\n";
  if (!module.ivars.empty()) {
    out << "IVAR\n";
    for (const auto& d : module.ivars) out << "  " << d.name << " : boolean;\n";
  }
  out << "VAR\n";
  std::string inst = submodule_name;
  if (!module.ivars.empty()) inst += "(" + params + ")";
  out << "  t1 : " << inst << ";\n";
  out << "  t2 : " << inst << ";\n";
  out << "DEFINE\n";
  out << "  -- Check internal states match\n";
  if (state_vars.empty()) {
    out << "  state_eq := TRUE;\n";
  } else {
    out << "  state_eq := ";
    for (size_t i = 0; i < state_vars.size(); ++i) {
      if (i) out << " &\n              ";
      out << "(t1." << state_vars[i] << " = t2." << state_vars[i] << ")";
    }
    out << ";\n";
  }
  out << "\nCTLSPEC AG state_eq\n";
  return out.str();
}

}  // namespace veriloop
