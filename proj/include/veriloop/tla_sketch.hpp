#pragma once

#include <map>
#include <string>
#include <vector>

#include "veriloop/adapter.hpp"
#include "veriloop/grammar.hpp"
#include "veriloop/result.hpp"
#include "veriloop/verdict.hpp"

namespace veriloop {

/// One fill-in point of a sketch. The grammar is a token grammar over the
/// infix expression tokens produced by tokenize_infix.
struct Hole {
  std::string hole_id;
  std::string marker;  // occurs exactly once in the sketch text
  Grammar grammar;
  std::string action_name;
};

struct CheckerConfig {
  std::string command;
  std::string working_dir;
  int workers = 8;
};

struct Sketch {
  std::string text;
  std::vector<Hole> holes;
  std::vector<std::string> properties;
  CheckerConfig checker;
};

/// Splits an expression fragment into tokens: identifier/number runs (a
/// trailing prime sticks to its identifier), single-character brackets and
/// separators, string literals, and maximal runs of operator characters.
TokenSeq tokenize_infix(const std::string& text);

/// Builds a Sketch from module text plus a JSON sidecar listing holes,
/// markers, grammars, properties, and checker settings.
Result<Sketch> parse_sketch_bundle(const std::string& sketch_text,
                                   const std::string& sidecar_json);

struct HoleMapping {
  std::map<std::string, TokenSeq> fills;  // hole_id → tokenized fill

  /// Sorted compact JSON with single-space token joins; layout variants of
  /// the same fills serialize identically, so this feeds the cache key.
  std::string canonical_text() const;
};

/// Strict JSON object of string values whose keys equal the sketch's hole
/// ids exactly. Key set mismatches report "key mismatch: ...".
Result<HoleMapping> parse_mapping(const std::string& json_text, const Sketch& sketch);

/// Every fill must derive from its hole's grammar start symbol, with the
/// exact parenthesization the grammar prescribes. Names the first offender.
Result<bool> check_mapping_grammar(const HoleMapping& mapping, const Sketch& sketch);

/// Replaces each marker with its canonical fill text in one scan over the
/// sketch; pure and order-independent. With no holes it is the identity.
std::string substitute(const Sketch& sketch, const HoleMapping& mapping);

/// Hands a completed module to the external model checker and classifies
/// the outcome. A failing Result means the checker could not run.
Result<Verdict> verify_completed(const std::string& module_text,
                                 const std::vector<std::string>& properties,
                                 const Adapter& adapter, double deadline_secs);

}  // namespace veriloop
