#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "veriloop/result.hpp"
#include "veriloop/tlsf.hpp"

namespace veriloop {

/// ASCII AIGER circuit. Literals use the usual encoding: even literals are
/// positive variable references, odd ones negated; 0 is FALSE, 1 is TRUE.
struct AigerCircuit {
  bool realizable = false;  // leading REALIZABLE line present
  uint64_t max_var = 0;     // M
  std::vector<uint64_t> input_literals;
  std::vector<std::pair<uint64_t, uint64_t>> latches;  // (current, next)
  std::vector<uint64_t> output_literals;
  struct Gate {
    uint64_t lhs, rhs0, rhs1;
  };
  std::vector<Gate> and_gates;
  std::map<std::string, std::string> symbols;  // "i0" -> "a", "o0" -> "outp", "l0" -> ...
  std::vector<std::string> comments;

  size_t num_inputs() const { return input_literals.size(); }
  size_t num_latches() const { return latches.size(); }
  size_t num_outputs() const { return output_literals.size(); }
};

/// Parses an ASCII ("aag") circuit, optionally preceded by a REALIZABLE line.
/// Binary ("aig") files are rejected. The error message names the first
/// violated rule.
Result<AigerCircuit> parse_aiger(const std::string& text);

/// Checks that input/output symbols exactly match the interface signal names,
/// positionally (i0 pairs with inputs[0] and so on).
Result<bool> validate_symbols(const AigerCircuit& circuit, const TlsfInterface& iface);

/// One simulation step's observable results.
struct AigerStep {
  std::vector<bool> outputs;
  std::vector<bool> latch_state;  // state the step was evaluated in
};

/// Runs the circuit on a sequence of input vectors (each of size I). Latches
/// start at 0; each step evaluates gates, reads outputs, then updates latches.
Result<std::vector<AigerStep>> simulate_aiger(const AigerCircuit& circuit,
                                              const std::vector<std::vector<bool>>& inputs);

/// Single transition from an arbitrary latch state, bit-packed (bit k is
/// latch k / input k / output k). Requires I, L, O <= 64.
struct AigerEval {
  uint64_t next_state = 0;
  uint64_t outputs = 0;
};
Result<AigerEval> aiger_eval_step(const AigerCircuit& circuit, uint64_t latch_state,
                                  uint64_t input_bits);

}  // namespace veriloop
