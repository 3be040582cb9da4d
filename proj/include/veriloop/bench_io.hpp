#pragma once

#include <string>

#include "veriloop/benchmark.hpp"
#include "veriloop/result.hpp"

namespace veriloop {

Result<std::string> read_text_file(const std::string& path);

struct LoadOptions {
  ReactiveTarget target = ReactiveTarget::Aiger;
  bool relaxed_grammar = false;
  std::string sidecar_path;  // sketch hole listing; default "<path>.json"
};

/// Reads and parses one benchmark file. The id is the file name without its
/// extension. Sketch benchmarks read the JSON sidecar next to the sketch.
Result<Benchmark> load_benchmark(DomainKind domain, const std::string& path,
                                 const LoadOptions& options = {});

}  // namespace veriloop
