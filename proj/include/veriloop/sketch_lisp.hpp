#pragma once

#include <map>
#include <string>
#include <vector>

#include "veriloop/adapter.hpp"
#include "veriloop/result.hpp"
#include "veriloop/sexpr.hpp"
#include "veriloop/verdict.hpp"

namespace veriloop {

struct FunctionSignature {
  std::string name;
  int arity = 0;
  std::vector<std::string> param_names;
};

/// Context for one recursive-function completion task. The property, IO,
/// datatype, definition, sketch, and grammar blocks are opaque text: they go
/// into prompts and adapter payloads but are never interpreted here.
struct LispBenchmark {
  std::vector<FunctionSignature> signatures;
  std::map<std::string, int> primitives;  // name → arity
  std::vector<std::string> terminals;
  std::string properties_text;
  std::string io_examples_text;
  std::string datatypes_text;
  std::string definitions_text;
  std::string sketches_text;
  std::string grammar_text;
  bool strict_terminals = false;
};

/// Reads the on-disk bundle: s-expression sections keyed by head symbol
/// (signatures, primitives, terminals, properties, io-examples, datatypes,
/// definitions, sketches, grammar, strict-terminals).
Result<LispBenchmark> parse_lisp_bundle(const std::string& text);

/// Syntactic gate for a candidate bundle: exactly one definition per
/// required signature; applied symbols must be defined functions,
/// primitives, or if-forms, at the right arity; unknown leaf atoms are
/// rejected only when strict_terminals is set.
Result<bool> validate_candidate(const std::vector<Term>& candidates,
                                const LispBenchmark& benchmark);

/// Assembles a self-contained check payload (datatypes, prior definitions,
/// the candidate definitions, properties, IO examples) and submits it to the
/// external counterexample generator.
Result<Verdict> verify_with_cgen(const std::vector<Term>& candidates,
                                 const LispBenchmark& benchmark, const Adapter& adapter,
                                 double deadline_secs);

}  // namespace veriloop
