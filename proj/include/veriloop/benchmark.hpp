#pragma once

#include <string>
#include <variant>

#include "veriloop/result.hpp"
#include "veriloop/sketch_lisp.hpp"
#include "veriloop/sygus.hpp"
#include "veriloop/tla_sketch.hpp"
#include "veriloop/tlsf.hpp"
#include "veriloop/verdict.hpp"

namespace veriloop {

enum class DomainKind { Reactive, Sygus, TlaSketch, Acl2sSketch };

std::string domain_name(DomainKind domain);
Result<DomainKind> parse_domain(const std::string& name);

enum class ReactiveTarget { Aiger, Smv };

struct ReactivePayload {
  TlsfInterface tlsf;
  ReactiveTarget target = ReactiveTarget::Aiger;
};

struct SygusPayload {
  SygusProblem problem;
};

struct TlaSketchPayload {
  Sketch sketch;
  bool relaxed_grammar = false;  // skip the grammar gate and prompt grammars
};

struct Acl2sPayload {
  LispBenchmark bundle;
};

struct Benchmark {
  std::string id;
  DomainKind domain = DomainKind::Sygus;
  std::string spec_text;  // the formal specification handed to generators
  std::variant<std::monostate, ReactivePayload, SygusPayload, TlaSketchPayload, Acl2sPayload> aux;
};

/// id nonempty; when a payload is present its kind must match the domain.
Result<bool> validate_benchmark(const Benchmark& benchmark);

/// 600 s everywhere except the recursive-function domain's 900 s.
Budget default_budget(DomainKind domain);

/// Response caching is on by default only for the sketch domains.
bool default_cache_enabled(DomainKind domain);

}  // namespace veriloop
