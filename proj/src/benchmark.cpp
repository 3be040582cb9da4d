#include "veriloop/benchmark.hpp"

namespace veriloop {

std::string domain_name(DomainKind domain) {
  switch (domain) {
    case DomainKind::Reactive:
      return "reactive";
    case DomainKind::Sygus:
      return "sygus";
    case DomainKind::TlaSketch:
      return "tla_sketch";
    case DomainKind::Acl2sSketch:
      return "acl2s_sketch";
  }
  return "?";
}

Result<DomainKind> parse_domain(const std::string& name) {
  using R = Result<DomainKind>;
  if (name == "reactive") return R::ok(DomainKind::Reactive);
  if (name == "sygus") return R::ok(DomainKind::Sygus);
  if (name == "tla_sketch") return R::ok(DomainKind::TlaSketch);
  if (name == "acl2s_sketch") return R::ok(DomainKind::Acl2sSketch);
  return R::fail("unknown domain: " + name);
}

Result<bool> validate_benchmark(const Benchmark& benchmark) {
  using R = Result<bool>;
  if (benchmark.id.empty()) return R::fail("benchmark id must be nonempty");
  bool matches = true;
  switch (benchmark.domain) {
    case DomainKind::Reactive:
      matches = std::holds_alternative<ReactivePayload>(benchmark.aux);
      break;
    case DomainKind::Sygus:
      matches = std::holds_alternative<SygusPayload>(benchmark.aux);
      break;
    case DomainKind::TlaSketch:
      matches = std::holds_alternative<TlaSketchPayload>(benchmark.aux);
      break;
    case DomainKind::Acl2sSketch:
      matches = std::holds_alternative<Acl2sPayload>(benchmark.aux);
      break;
  }
  if (!matches && !std::holds_alternative<std::monostate>(benchmark.aux))
    return R::fail(benchmark.id + ": payload does not match domain " +
                   domain_name(benchmark.domain));
  return R::ok(true);
}

Budget default_budget(DomainKind domain) {
  Budget b;
  b.total_secs = domain == DomainKind::Acl2sSketch ? kRecursiveBudgetSecs : kDefaultBudgetSecs;
  return b;
}

bool default_cache_enabled(DomainKind domain) {
  return domain == DomainKind::TlaSketch || domain == DomainKind::Acl2sSketch;
}

}  // namespace veriloop
