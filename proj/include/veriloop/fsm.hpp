#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "veriloop/aiger.hpp"
#include "veriloop/boolexpr.hpp"
#include "veriloop/result.hpp"
#include "veriloop/smv.hpp"

namespace veriloop {

/// Explicit-state machine with packed bit-vector states and inputs. Bit k of
/// a state corresponds to state_names[k]; likewise for inputs and outputs.
/// Deterministic by construction: next and outputs are functions.
struct Fsm {
  std::vector<std::string> input_names;
  std::vector<std::string> state_names;
  std::vector<std::string> output_names;
  uint64_t init_state = 0;
  std::function<uint64_t(uint64_t, uint64_t)> next;     // (state, input) -> state
  std::function<uint64_t(uint64_t, uint64_t)> outputs;  // (state, input) -> output bits
};

/// Machine whose transitions may offer several successors; used by the
/// determinism check, which must be able to represent the failure it detects.
struct RelationalFsm {
  std::vector<std::string> input_names;
  std::vector<std::string> state_names;
  std::vector<uint64_t> init_states;
  std::function<std::vector<uint64_t>(uint64_t, uint64_t)> next;
};

RelationalFsm as_relational(const Fsm& fsm);

enum class CheckStatus { Ok, Violated, LimitExceeded };

inline constexpr uint64_t kDefaultStateCap = 1u << 20;
inline constexpr size_t kMaxEnumeratedInputBits = 20;

/// Witness that two copies fed identical inputs can reach unequal states.
/// states has one entry more than inputs; the last pair is unequal.
struct DivergenceTrace {
  std::vector<uint64_t> inputs;
  std::vector<std::pair<uint64_t, uint64_t>> states;
};

struct DeterminismResult {
  CheckStatus status = CheckStatus::Ok;
  std::optional<DivergenceTrace> trace;
  std::string note;
  bool deterministic() const { return status == CheckStatus::Ok; }
};

/// Breadth-first search over the synchronized product of two copies.
DeterminismResult check_determinism(const RelationalFsm& fsm,
                                    uint64_t state_cap = kDefaultStateCap);
DeterminismResult check_determinism(const Fsm& fsm, uint64_t state_cap = kDefaultStateCap);

/// Witness that prop fails at some reachable (state, input) pair: inputs
/// drive the machine from init through states; prop is false at
/// (states.back(), bad_input).
struct ViolationTrace {
  std::vector<uint64_t> inputs;
  std::vector<uint64_t> states;
  uint64_t bad_input = 0;
};

struct InvariantResult {
  CheckStatus status = CheckStatus::Ok;
  std::optional<ViolationTrace> trace;
  std::string note;
  bool holds() const { return status == CheckStatus::Ok; }
};

/// AG semantics: prop must hold at every reachable (state, input) pair.
/// prop may reference state, input, and output names; unknown names fail.
Result<InvariantResult> check_invariant(const Fsm& fsm, const BoolExprPtr& prop,
                                        uint64_t state_cap = kDefaultStateCap);

/// Trace replays used to cross-check reported witnesses.
bool replay_divergence(const RelationalFsm& fsm, const DivergenceTrace& trace);
Result<bool> replay_violation(const Fsm& fsm, const BoolExprPtr& prop,
                              const ViolationTrace& trace);

/// Builds the machine a structure-checked module denotes. init() expressions
/// must be closed; next() and DEFINE expressions range over inputs, state,
/// and defines. Output bits cover every DEFINE in file order.
Result<Fsm> smv_to_fsm(const SmvModule& module);

/// Circuit as a machine: latches are the state, symbol names (or i0/o0-style
/// defaults) name the bits.
Result<Fsm> aiger_to_fsm(const AigerCircuit& circuit);

}  // namespace veriloop
