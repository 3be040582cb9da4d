#pragma once

#include <memory>
#include <string>

#include "veriloop/harness.hpp"

namespace veriloop {

struct EnumeratorSettings {
  /// Ceiling on total fill tokens across all sketch holes. Past it the
  /// product stream reports exhaustion instead of growing without bound.
  int max_sketch_tokens = 24;
};

/// Deterministic grammar-driven candidate stream: nondecreasing size,
/// fixed order within one size, never repeating. Function-synthesis
/// benchmarks enumerate the single grammar-bearing function; sketch
/// benchmarks combine per-hole token grammars by total token count.
class EnumeratorGenerator : public Generator {
 public:
  explicit EnumeratorGenerator(EnumeratorSettings settings = {});
  ~EnumeratorGenerator() override;

  GenOutput generate(const Benchmark& benchmark, double deadline_secs) override;

 private:
  struct State;
  EnumeratorSettings settings_;
  std::string active_benchmark_;
  std::unique_ptr<State> state_;
};

}  // namespace veriloop
