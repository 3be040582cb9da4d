#include "veriloop/bench_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "veriloop/sketch_lisp.hpp"
#include "veriloop/sygus.hpp"
#include "veriloop/tla_sketch.hpp"
#include "veriloop/tlsf.hpp"

namespace veriloop {

Result<std::string> read_text_file(const std::string& path) {
  using R = Result<std::string>;
  std::ifstream in(path, std::ios::binary);
  if (!in) return R::fail("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return R::ok(buffer.str());
}

Result<Benchmark> load_benchmark(DomainKind domain, const std::string& path,
                                 const LoadOptions& options) {
  using R = Result<Benchmark>;
  auto text = read_text_file(path);
  if (!text) return R::fail(text.error());

  Benchmark benchmark;
  benchmark.id = std::filesystem::path(path).stem().string();
  benchmark.domain = domain;
  benchmark.spec_text = text.value();

  switch (domain) {
    case DomainKind::Reactive: {
      auto tlsf = parse_tlsf(benchmark.spec_text);
      if (!tlsf) return R::fail(path + ": " + tlsf.error());
      benchmark.aux = ReactivePayload{tlsf.take(), options.target};
      break;
    }
    case DomainKind::Sygus: {
      auto problem = parse_sygus(benchmark.spec_text);
      if (!problem) return R::fail(path + ": " + problem.error());
      benchmark.aux = SygusPayload{problem.take()};
      break;
    }
    case DomainKind::TlaSketch: {
      const std::string sidecar_path =
          options.sidecar_path.empty() ? path + ".json" : options.sidecar_path;
      auto sidecar = read_text_file(sidecar_path);
      if (!sidecar) return R::fail(sidecar.error());
      auto sketch = parse_sketch_bundle(benchmark.spec_text, sidecar.value());
      if (!sketch) return R::fail(path + ": " + sketch.error());
      benchmark.aux = TlaSketchPayload{sketch.take(), options.relaxed_grammar};
      break;
    }
    case DomainKind::Acl2sSketch: {
      auto bundle = parse_lisp_bundle(benchmark.spec_text);
      if (!bundle) return R::fail(path + ": " + bundle.error());
      benchmark.aux = Acl2sPayload{bundle.take()};
      break;
    }
  }
  return R::ok(std::move(benchmark));
}

}  // namespace veriloop
