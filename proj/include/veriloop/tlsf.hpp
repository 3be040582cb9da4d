#pragma once

#include <string>
#include <vector>

#include "veriloop/boolexpr.hpp"
#include "veriloop/result.hpp"

namespace veriloop {

/// Interface portion of a TLSF synthesis specification. Guarantee and
/// assumption bodies are kept as raw text; only signal lists and the
/// semantics/target tags are interpreted.
struct TlsfInterface {
  std::string title;
  std::string description;
  std::string semantics = "Mealy";
  std::string target = "Mealy";
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> assumptions;  // one entry per ';'-terminated item
  std::vector<std::string> guarantees;
};

Result<TlsfInterface> parse_tlsf(const std::string& text);

/// When every guarantee has the shape G(<propositional formula>), returns the
/// formulas; otherwise fails (such specifications need an external checker).
Result<std::vector<BoolExprPtr>> propositional_guarantees(const TlsfInterface& iface);

}  // namespace veriloop
