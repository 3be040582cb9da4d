#include "veriloop/domains.hpp"

#include <chrono>
#include <sstream>
#include <variant>

#include "veriloop/aiger.hpp"
#include "veriloop/sketch_lisp.hpp"
#include "veriloop/smv.hpp"
#include "veriloop/tla_sketch.hpp"
#include "veriloop/tlsf.hpp"

namespace veriloop {

namespace {

double now_secs() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string render_assignment(const Env& env) {
  std::string out;
  for (const auto& [name, value] : env) {
    if (!out.empty()) out += ", ";
    out += name + " = " + value.to_string();
  }
  return out.empty() ? "the empty assignment" : out;
}

/// First whitespace-delimited token of the solver's output.
std::string first_token(const std::string& text) {
  size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  size_t end = text.find_first_of(" \t\r\n", begin);
  return text.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
}

Verdict classify_solver_output(const AdapterResponse& response) {
  if (response.status == AdapterResponse::Status::Timeout) {
    return Verdict::verify_timeout(response.detail.empty() ? "external solver timeout"
                                                           : response.detail);
  }
  const std::string head = first_token(response.detail);
  if (head == "unsat") return Verdict::pass();
  if (head == "sat") return Verdict::semantic_fail("external solver found a counterexample:\n" +
                                                   response.detail);
  if (head == "unknown") return Verdict::verify_timeout("external solver returned unknown");
  if (response.status == AdapterResponse::Status::Pass) return Verdict::pass();
  return Verdict::semantic_fail(response.detail.empty() ? "external solver rejected the candidate"
                                                        : response.detail);
}

Verdict classify_checker_response(const AdapterResponse& response) {
  switch (response.status) {
    case AdapterResponse::Status::Pass:
      return Verdict::pass();
    case AdapterResponse::Status::Fail:
      return Verdict::semantic_fail(response.detail.empty() ? "property violated"
                                                            : response.detail);
    case AdapterResponse::Status::Timeout:
      return Verdict::verify_timeout(response.detail.empty() ? "checker timeout"
                                                             : response.detail);
  }
  return Verdict::verify_timeout("unclassified checker response");
}

}  // namespace

// ── Reactive ─────────────────────────────────────────────────────────

ReactiveVerifier::ReactiveVerifier() : ReactiveVerifier(Options{}) {}

ReactiveVerifier::ReactiveVerifier(Options options) : options_(std::move(options)) {}

Result<Verdict> ReactiveVerifier::verify(const Benchmark& benchmark,
                                         const std::string& candidate, double deadline_secs) {
  using R = Result<Verdict>;
  const auto* payload = std::get_if<ReactivePayload>(&benchmark.aux);
  if (!payload) return R::fail("reactive benchmark " + benchmark.id + " has no TLSF payload");
  const TlsfInterface& tlsf = payload->tlsf;

  const double start = now_secs();
  auto expired = [&] { return now_secs() - start >= deadline_secs; };
  if (deadline_secs <= 0) return R::ok(Verdict::verify_timeout("stopped at the deadline"));

  Fsm fsm;
  if (payload->target == ReactiveTarget::Aiger) {
    auto circuit = parse_aiger(candidate);
    if (!circuit) return R::ok(Verdict::syntax_fail(circuit.error()));
    if (!circuit.value().realizable) {
      return R::ok(Verdict::semantic_fail("the circuit does not claim REALIZABLE"));
    }
    if (auto symbols = validate_symbols(circuit.value(), tlsf); !symbols) {
      return R::ok(Verdict::grammar_fail(symbols.error()));
    }
    auto built = aiger_to_fsm(circuit.value());
    if (!built) return R::ok(Verdict::verify_timeout("internal engine limit: " + built.error()));
    fsm = built.take();
  } else {
    auto module = parse_smv_subset(candidate);
    if (!module) return R::ok(Verdict::syntax_fail(module.error()));
    SmvSanityReport report = sanity_check_smv(module.value(), tlsf);
    std::string notes;
    for (const std::string& note : report.notes) {
      if (!notes.empty()) notes += "; ";
      notes += note;
    }
    if (!report.structure_ok || !report.boolean_ok) {
      return R::ok(Verdict::syntax_fail(notes.empty() ? "sanity check failed" : notes));
    }
    if (!report.io_mapping_ok) {
      return R::ok(Verdict::grammar_fail(notes.empty() ? "signal names mismatch" : notes));
    }
    auto built = smv_to_fsm(module.value());
    if (!built) return R::ok(Verdict::semantic_fail(built.error()));
    fsm = built.take();

    DeterminismResult det = check_determinism(fsm, options_.state_cap);
    if (det.status == CheckStatus::Violated) {
      return R::ok(Verdict::semantic_fail("nondeterministic module: " + det.note));
    }
    if (det.status == CheckStatus::LimitExceeded) {
      return R::ok(Verdict::verify_timeout("state cap exceeded during the determinism check"));
    }
  }
  if (expired()) return R::ok(Verdict::verify_timeout("stopped at the deadline"));

  auto props = propositional_guarantees(tlsf);
  if (!props) {
    if (!options_.external_checker) {
      return R::fail("benchmark " + benchmark.id +
                     " needs the external model checker: " + props.error());
    }
    AdapterRequest request;
    request.payload = candidate;
    request.args = tlsf.guarantees;
    request.deadline_secs = deadline_secs - (now_secs() - start);
    auto response = (*options_.external_checker)(request);
    if (!response) return R::fail(response.error());
    return R::ok(classify_checker_response(response.value()));
  }

  for (size_t i = 0; i < props.value().size(); ++i) {
    auto checked = check_invariant(fsm, props.value()[i], options_.state_cap);
    if (!checked) return R::fail(checked.error());
    if (checked.value().status == CheckStatus::Violated) {
      std::string detail = "guarantee " + tlsf.guarantees[i] + " is violated";
      if (checked.value().trace) {
        detail += " after " + std::to_string(checked.value().trace->inputs.size()) + " step(s)";
      }
      return R::ok(Verdict::semantic_fail(detail));
    }
    if (checked.value().status == CheckStatus::LimitExceeded) {
      return R::ok(Verdict::verify_timeout("state cap exceeded while checking guarantees"));
    }
    if (expired()) return R::ok(Verdict::verify_timeout("stopped at the deadline"));
  }
  return R::ok(Verdict::pass());
}

// ── SyGuS ────────────────────────────────────────────────────────────

SygusVerifier::SygusVerifier(SearchSettings search, std::optional<Adapter> external_solver)
    : search_(search), external_solver_(std::move(external_solver)) {}

Result<Verdict> SygusVerifier::verify(const Benchmark& benchmark, const std::string& candidate,
                                      double deadline_secs) {
  using R = Result<Verdict>;
  const auto* payload = std::get_if<SygusPayload>(&benchmark.aux);
  if (!payload) return R::fail("sygus benchmark " + benchmark.id + " has no parsed problem");
  const SygusProblem& problem = payload->problem;
  if (deadline_secs <= 0) return R::ok(Verdict::verify_timeout("stopped at the deadline"));

  auto defs = parse_candidate_defs(candidate);
  if (!defs) return R::ok(Verdict::syntax_fail(defs.error()));
  if (auto sig = check_signature(problem, defs.value()); !sig) {
    return R::ok(Verdict::syntax_fail(sig.error()));
  }
  if (auto grammar = check_grammar(problem, defs.value()); !grammar) {
    return R::ok(Verdict::grammar_fail(grammar.error()));
  }

  const double start = now_secs();
  auto found = find_counterexample(problem, defs.value(), search_);
  if (found) {
    if (!found.value()) return R::ok(Verdict::pass());
    const Counterexample& cex = *found.value();
    std::string detail = "constraint " + print_term(problem.constraints[cex.failed_constraint]) +
                         " fails at " + render_assignment(cex.assignment);
    return R::ok(Verdict::semantic_fail(detail));
  }

  // The internal search cannot handle this theory; defer to the solver.
  if (!external_solver_) return R::fail(found.error());
  AdapterRequest request;
  request.payload = emit_smt_query(problem, defs.value());
  request.deadline_secs = deadline_secs - (now_secs() - start);
  auto response = (*external_solver_)(request);
  if (!response) return R::fail(response.error());
  return R::ok(classify_solver_output(response.value()));
}

// ── Sketch domains ───────────────────────────────────────────────────

TlaSketchVerifier::TlaSketchVerifier(Adapter checker) : checker_(std::move(checker)) {}

Result<Verdict> TlaSketchVerifier::verify(const Benchmark& benchmark,
                                          const std::string& candidate, double deadline_secs) {
  using R = Result<Verdict>;
  const auto* payload = std::get_if<TlaSketchPayload>(&benchmark.aux);
  if (!payload) return R::fail("sketch benchmark " + benchmark.id + " has no sketch payload");
  if (deadline_secs <= 0) return R::ok(Verdict::verify_timeout("stopped at the deadline"));

  auto mapping = parse_mapping(candidate, payload->sketch);
  if (!mapping) return R::ok(Verdict::syntax_fail(mapping.error()));
  if (!payload->relaxed_grammar) {
    if (auto gate = check_mapping_grammar(mapping.value(), payload->sketch); !gate) {
      return R::ok(Verdict::grammar_fail(gate.error()));
    }
  }
  const std::string completed = substitute(payload->sketch, mapping.value());
  return verify_completed(completed, payload->sketch.properties, checker_, deadline_secs);
}

std::string TlaSketchVerifier::canonical_key(const Benchmark& benchmark,
                                             const std::string& candidate) {
  if (const auto* payload = std::get_if<TlaSketchPayload>(&benchmark.aux)) {
    if (auto mapping = parse_mapping(candidate, payload->sketch)) {
      return mapping.value().canonical_text();
    }
  }
  return Verifier::canonical_key(benchmark, candidate);
}

LispSketchVerifier::LispSketchVerifier(Adapter cgen) : cgen_(std::move(cgen)) {}

Result<Verdict> LispSketchVerifier::verify(const Benchmark& benchmark,
                                           const std::string& candidate, double deadline_secs) {
  using R = Result<Verdict>;
  const auto* payload = std::get_if<Acl2sPayload>(&benchmark.aux);
  if (!payload) return R::fail("lisp benchmark " + benchmark.id + " has no bundle payload");
  if (deadline_secs <= 0) return R::ok(Verdict::verify_timeout("stopped at the deadline"));

  auto terms = parse_sexprs(candidate);
  if (!terms) return R::ok(Verdict::syntax_fail(terms.error()));
  if (auto valid = validate_candidate(terms.value(), payload->bundle); !valid) {
    return R::ok(Verdict::syntax_fail(valid.error()));
  }
  return verify_with_cgen(terms.value(), payload->bundle, cgen_, deadline_secs);
}

}  // namespace veriloop
