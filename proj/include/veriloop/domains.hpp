#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "veriloop/adapter.hpp"
#include "veriloop/fsm.hpp"
#include "veriloop/harness.hpp"
#include "veriloop/sygus.hpp"

namespace veriloop {

/// Checks circuits and state machines against a TLSF interface with the
/// internal explicit-state engine. Guarantees of the shape G(<propositional>)
/// are checked directly; anything richer needs the external model-checker
/// adapter and fails the run when none is configured.
class ReactiveVerifier : public Verifier {
 public:
  struct Options {
    uint64_t state_cap = kDefaultStateCap;
    std::optional<Adapter> external_checker;
  };
  ReactiveVerifier();
  explicit ReactiveVerifier(Options options);

  Result<Verdict> verify(const Benchmark& benchmark, const std::string& candidate,
                         double deadline_secs) override;

 private:
  Options options_;
};

/// Signature, grammar, and constraint checking for function-synthesis
/// candidates. Constraints are checked by the internal counterexample
/// search; theories it cannot evaluate (strings, arrays, oversized domains'
/// proofs) are emitted as SMT queries to the external solver adapter.
class SygusVerifier : public Verifier {
 public:
  explicit SygusVerifier(SearchSettings search = {},
                         std::optional<Adapter> external_solver = {});

  Result<Verdict> verify(const Benchmark& benchmark, const std::string& candidate,
                         double deadline_secs) override;

 private:
  SearchSettings search_;
  std::optional<Adapter> external_solver_;
};

/// Decodes a JSON hole mapping, gates it on the per-hole grammars (unless
/// the benchmark is relaxed), substitutes, and hands the completed module to
/// the external model checker. Cache keys use the canonical mapping text, so
/// layout variants of one mapping verify once.
class TlaSketchVerifier : public Verifier {
 public:
  explicit TlaSketchVerifier(Adapter checker);

  Result<Verdict> verify(const Benchmark& benchmark, const std::string& candidate,
                         double deadline_secs) override;
  std::string canonical_key(const Benchmark& benchmark, const std::string& candidate) override;

 private:
  Adapter checker_;
};

/// Validates recursive-function definitions syntactically (arity and known
/// symbols; grammar conformance is deliberately not enforced) and routes the
/// semantic check to the external counterexample generator.
class LispSketchVerifier : public Verifier {
 public:
  explicit LispSketchVerifier(Adapter cgen);

  Result<Verdict> verify(const Benchmark& benchmark, const std::string& candidate,
                         double deadline_secs) override;

 private:
  Adapter cgen_;
};

}  // namespace veriloop
