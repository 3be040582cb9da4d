#pragma once

#include <string>
#include <utility>
#include <vector>

#include "veriloop/boolexpr.hpp"
#include "veriloop/result.hpp"
#include "veriloop/tlsf.hpp"

namespace veriloop {

/// Kinds of findings a lenient parse records. Strict parsing turns the first
/// finding into an error.
enum class SmvIssueKind { Structure, Typing, Style };

struct SmvIssue {
  SmvIssueKind kind;
  std::string message;
};

struct SmvVarDecl {
  std::string name;
  std::string type_text;  // "boolean", "0..3", "modname(a, b)", ...
  bool is_boolean = false;
  bool is_instance = false;
  std::string instance_module;
  std::vector<std::string> instance_args;
};

/// One module of the supported SMV subset: IVAR/VAR/ASSIGN/DEFINE plus
/// recorded spec lines. Expressions are purely boolean.
struct SmvModule {
  std::string name;
  std::vector<std::string> params;
  std::vector<SmvVarDecl> ivars;
  std::vector<SmvVarDecl> vars;
  std::vector<std::pair<std::string, BoolExprPtr>> init_assigns;  // file order
  std::vector<std::pair<std::string, BoolExprPtr>> next_assigns;
  std::vector<std::pair<std::string, BoolExprPtr>> defines;
  std::vector<std::string> specs;  // e.g. "CTLSPEC AG state_eq"
  std::vector<SmvIssue> issues;

  const BoolExprPtr* find_init(const std::string& var) const;
  const BoolExprPtr* find_next(const std::string& var) const;
  const BoolExprPtr* find_define(const std::string& name) const;
  bool has_issues() const { return !issues.empty(); }
};

/// Strict single-module parse: any recorded issue becomes an error.
Result<SmvModule> parse_smv_subset(const std::string& text);

/// Lenient single-module parse: issues are kept on the module.
Result<SmvModule> parse_smv_lenient(const std::string& text);

/// Lenient parse of a file with one or more MODULE declarations.
Result<std::vector<SmvModule>> parse_smv_modules(const std::string& text);

/// Results of the three sanity checks run before model checking.
struct SmvSanityReport {
  bool structure_ok = false;
  bool boolean_ok = false;
  bool io_mapping_ok = false;
  std::vector<std::string> notes;

  bool all_ok() const { return structure_ok && boolean_ok && io_mapping_ok; }
};

SmvSanityReport sanity_check_smv(const SmvModule& module, const TlsfInterface& iface);

/// Builds the self-composition text: the module's logic becomes a parameterized
/// submodule, instantiated twice on shared inputs, with a CTL check that the
/// internal states agree. Deterministic output for identical input.
std::string self_compose(const SmvModule& module, const std::string& submodule_name);

/// Token stream with comments dropped; used to compare SMV texts structurally.
std::vector<std::string> tokenize_smv(const std::string& text);

}  // namespace veriloop
