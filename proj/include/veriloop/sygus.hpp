#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "veriloop/grammar.hpp"
#include "veriloop/result.hpp"
#include "veriloop/sexpr.hpp"

namespace veriloop {

using BigInt = boost::multiprecision::cpp_int;

/// Sorts are kept in canonical printed form: "Int", "Bool", "(_ BitVec 8)",
/// "String", "(Array Int Int)". Equality is string equality.
using SortName = std::string;

struct SynthFun {
  std::string name;
  std::vector<std::pair<std::string, SortName>> params;
  SortName return_sort;
  std::optional<Grammar> grammar;
};

struct SygusProblem {
  std::string logic;
  std::vector<SynthFun> synth_funs;
  std::vector<std::pair<std::string, SortName>> declared_vars;
  std::vector<Term> constraints;
};

struct CandidateDef {
  std::string name;
  std::vector<std::pair<std::string, SortName>> params;
  SortName return_sort;
  Term body;
};

struct CandidateDefs {
  std::vector<CandidateDef> defs;
  const CandidateDef* find(const std::string& name) const;
};

/// Runtime value for the internal evaluator.
struct Value {
  enum class Kind { Bool, Int, BitVec };
  Kind kind = Kind::Bool;
  bool b = false;
  BigInt i;
  uint32_t width = 0;   // BitVec
  uint64_t bits = 0;    // BitVec magnitude, already masked to width

  static Value of_bool(bool v);
  static Value of_int(BigInt v);
  static Value of_bitvec(uint32_t width, uint64_t bits);

  bool operator==(const Value& other) const;
  std::string to_string() const;  // "true", "-3", "(_ bv5 8)"
};

using Env = std::map<std::string, Value>;

/// Parses a SyGuS problem file. Recognizes set-logic, synth-fun (with an
/// optional grammar), declare-var, constraint, check-synth. Grammar
/// meta-productions (Constant ...)/(Variable ...) and invariant-track
/// commands are unsupported features.
Result<SygusProblem> parse_sygus(const std::string& text);

/// Parses candidate text consisting solely of define-fun forms.
Result<CandidateDefs> parse_candidate_defs(const std::string& text);

/// Exact signature comparison: one def per synth-fun, same name, parameter
/// names and sorts, and return sort; extra defs (helpers) are rejected.
Result<bool> check_signature(const SygusProblem& problem, const CandidateDefs& candidate);

/// Grammar conformance: each grammared synth-fun's body must be derivable
/// from the grammar's start symbol. Grammar-free functions pass.
Result<bool> check_grammar(const SygusProblem& problem, const CandidateDefs& candidate);

/// Big-step evaluation. Integer div/mod use the SMT-LIB Euclidean semantics;
/// the by-zero cases are totalized as (div x 0) = 0 and (mod x 0) = x.
/// Bitvector arithmetic wraps modulo 2^width; bvudiv by zero yields all ones
/// and bvurem by zero yields the dividend.
Result<Value> eval_term(const Term& term, const Env& env, const CandidateDefs& defs);

struct SearchSettings {
  long long exhaustive_bound = 32;  // Int scan range [-B, B]
  int random_samples = 10000;
  uint64_t seed = 0;
};

struct Counterexample {
  Env assignment;
  size_t failed_constraint = 0;
};

/// Searches declared-variable assignments for one falsifying a constraint.
/// Exhaustive in declaration order (last variable fastest, values ascending)
/// when the domain product is at most 10^6; otherwise draws seeded samples.
/// nullopt means none found at this budget, not a proof.
Result<std::optional<Counterexample>> find_counterexample(const SygusProblem& problem,
                                                          const CandidateDefs& candidate,
                                                          const SearchSettings& settings = {});

/// SMT-LIB v2 refutation query: candidate definitions, declared constants,
/// and the negated conjunction of all constraints. "unsat" means correct.
std::string emit_smt_query(const SygusProblem& problem, const CandidateDefs& candidate);

}  // namespace veriloop
