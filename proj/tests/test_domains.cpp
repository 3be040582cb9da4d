#include "doctest.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "veriloop/bench_io.hpp"
#include "veriloop/domains.hpp"
#include "veriloop/enumerator.hpp"
#include "veriloop/harness.hpp"
#include "veriloop/subprocess.hpp"
#include "veriloop/sygus.hpp"
#include "veriloop/tla_sketch.hpp"
#include "veriloop/tlsf.hpp"

using namespace veriloop;

namespace {

double wall_secs() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// A scripted adapter that records every request and replays queued responses
// (the last one repeats once the queue runs dry).
struct ScriptedAdapter {
  std::shared_ptr<std::vector<AdapterRequest>> log =
      std::make_shared<std::vector<AdapterRequest>>();
  std::shared_ptr<std::vector<Result<AdapterResponse>>> script =
      std::make_shared<std::vector<Result<AdapterResponse>>>();

  void respond(AdapterResponse::Status status, std::string detail = "") {
    AdapterResponse r;
    r.status = status;
    r.detail = std::move(detail);
    script->push_back(Result<AdapterResponse>::ok(std::move(r)));
  }
  void fail_with(std::string why) {
    script->push_back(Result<AdapterResponse>::fail(std::move(why)));
  }

  Adapter adapter() {
    auto log_ = log;
    auto script_ = script;
    auto cursor = std::make_shared<size_t>(0);
    return [log_, script_, cursor](const AdapterRequest& request) {
      log_->push_back(request);
      REQUIRE_FALSE(script_->empty());
      size_t i = *cursor < script_->size() ? *cursor : script_->size() - 1;
      ++*cursor;
      return (*script_)[i];
    };
  }
};

const char* kAndGateTlsf = R"(INFO {
    TITLE:       "Trivial AND gate"
    DESCRIPTION: "Output is AND of two inputs"
    SEMANTICS:   Mealy
    TARGET:      Mealy
}
MAIN {
    INPUTS { a; b; }
    OUTPUTS { outp; }
    GUARANTEES { G(outp <-> (a && b)); }
}
)";

Benchmark reactive_bench(ReactiveTarget target, const char* tlsf_text = kAndGateTlsf) {
  auto tlsf = parse_tlsf(tlsf_text);
  REQUIRE_MESSAGE(tlsf.is_ok(), tlsf.error());
  Benchmark b;
  b.id = "and-gate";
  b.domain = DomainKind::Reactive;
  b.spec_text = tlsf_text;
  ReactivePayload payload;
  payload.tlsf = tlsf.take();
  payload.target = target;
  b.aux = payload;
  return b;
}

const char* kAndGateAiger = R"(REALIZABLE
aag 3 2 0 1 1
2
4
6
6 2 4
i0 a
i1 b
o0 outp
)";

const char* kMiProblem =
    "(set-logic LIA)\n"
    "(synth-fun mi ((x Int) (y Int)) Int\n"
    "    ((S Int) (I Int))\n"
    "    ((S Int ((ite (<= I I) I I)))\n"
    "     (I Int (x y))))\n"
    "(declare-var x Int)\n"
    "(declare-var y Int)\n"
    "(constraint (=> (>= x y) (= (mi x y) y)))\n"
    "(constraint (=> (>= y x) (= (mi x y) x)))\n"
    "(check-synth)\n";

Benchmark sygus_bench(const std::string& spec, const std::string& id = "sy-1") {
  auto problem = parse_sygus(spec);
  REQUIRE_MESSAGE(problem.is_ok(), problem.error());
  Benchmark b;
  b.id = id;
  b.domain = DomainKind::Sygus;
  b.spec_text = spec;
  b.aux = SygusPayload{problem.take()};
  return b;
}

const char* const kCounterSketch =
    "---- MODULE Counter ----\n"
    "VARIABLE x\n"
    "Init == x = 0\n"
    "Increment == <<HOLE:H1>>\n"
    "Next == Increment\n"
    "====\n";

const char* const kCounterSidecar = R"json({
  "holes": [
    {
      "id": "H1",
      "marker": "<<HOLE:H1>>",
      "action": "Increment",
      "grammar": {
        "start": "S",
        "rules": {
          "S": ["x' = E + 1", "x' = E"],
          "E": ["x", "0"]
        }
      }
    }
  ],
  "properties": ["TypeOK", "Safety"],
  "checker": {"command": "tlc", "working_dir": ".", "workers": 8}
})json";

Benchmark tla_bench(bool relaxed = false) {
  Benchmark b;
  b.id = "counter";
  b.domain = DomainKind::TlaSketch;
  b.spec_text = kCounterSketch;
  auto sketch = parse_sketch_bundle(kCounterSketch, kCounterSidecar);
  REQUIRE_MESSAGE(sketch.is_ok(), sketch.error());
  TlaSketchPayload payload;
  payload.sketch = sketch.take();
  payload.relaxed_grammar = relaxed;
  b.aux = payload;
  return b;
}

const char* kAppBundle = R"lisp((signatures (app 2 (x y)))
(primitives (cons 2) (car 1) (cdr 1) (consp 1) (if 3))
(terminals x y nil)
(properties "(property app-assoc (x :tl y :tl z :tl) (equal (app (app x y) z) (app x (app y z))))")
(io-examples "(check= (app (cons 1 nil) (cons 2 nil)) (cons 1 (cons 2 nil)))")
(datatypes "(defdata tl (listof all))")
(definitions "")
(sketches "(defunc app (x y) (if (consp x) <BODY> y))")
(grammar "B -> y | (cons (car x) (app (cdr x) y))")
)lisp";

Benchmark lisp_bench() {
  auto bundle = parse_lisp_bundle(kAppBundle);
  REQUIRE_MESSAGE(bundle.is_ok(), bundle.error());
  Benchmark b;
  b.id = "app";
  b.domain = DomainKind::Acl2sSketch;
  b.spec_text = kAppBundle;
  b.aux = Acl2sPayload{bundle.take()};
  return b;
}

std::string kind_name(const Result<Verdict>& r) {
  return r.is_ok() ? verdict_kind_name(r.value().kind) : "result-error: " + r.error();
}

std::filesystem::path fixture_dir() {
  auto dir = std::filesystem::temp_directory_path() / "veriloop_bench_io";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_fixture(const std::string& name, const std::string& text) {
  auto path = fixture_dir() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out << text;
  out.close();
  return path.string();
}

}  // namespace

// ── subprocess adapter ───────────────────────────────────────────────

TEST_CASE("subprocess adapter pipes the payload and reports exit 0 as Pass") {
  Adapter cat = make_subprocess_adapter({"/bin/cat", {}, ""});
  AdapterRequest req;
  req.payload = "hello adapter\n";
  req.deadline_secs = 10;
  auto r = cat(req);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK(r.value().status == AdapterResponse::Status::Pass);
  CHECK(r.value().detail == "hello adapter\n");
}

TEST_CASE("subprocess adapter reports exit 1 as Fail with the tool output") {
  Adapter tool = make_subprocess_adapter(
      {"/bin/sh", {"-c", "cat >/dev/null; echo violation found; exit 1"}, ""});
  AdapterRequest req;
  req.payload = "module text";
  req.deadline_secs = 10;
  auto r = tool(req);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK(r.value().status == AdapterResponse::Status::Fail);
  CHECK(r.value().detail == "violation found\n");
}

TEST_CASE("subprocess adapter appends request args after the base args") {
  Adapter tool = make_subprocess_adapter(
      {"/bin/sh", {"-c", R"(cat >/dev/null; echo "$@")", "checker"}, ""});
  AdapterRequest req;
  req.payload = "ignored";
  req.args = {"G(a)", "G(b -> c)"};
  req.deadline_secs = 10;
  auto r = tool(req);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK(r.value().detail == "G(a) G(b -> c)\n");
}

TEST_CASE("subprocess adapter merges stderr into the detail text") {
  Adapter tool = make_subprocess_adapter(
      {"/bin/sh", {"-c", "cat >/dev/null; echo oops >&2; exit 1"}, ""});
  AdapterRequest req;
  req.deadline_secs = 10;
  auto r = tool(req);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK(r.value().detail.find("oops") != std::string::npos);
}

TEST_CASE("subprocess adapter runs in the configured working directory") {
  Adapter tool = make_subprocess_adapter({"/bin/sh", {"-c", "cat >/dev/null; pwd"}, "/tmp"});
  AdapterRequest req;
  req.deadline_secs = 10;
  auto r = tool(req);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK(r.value().detail.find("/tmp") != std::string::npos);
}

TEST_CASE("subprocess adapter kills the child at the deadline") {
  Adapter slow = make_subprocess_adapter({"/bin/sh", {"-c", "sleep 30"}, ""});
  AdapterRequest req;
  req.deadline_secs = 0.3;
  double start = wall_secs();
  auto r = slow(req);
  double elapsed = wall_secs() - start;
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK(r.value().status == AdapterResponse::Status::Timeout);
  CHECK(elapsed < 5.0);
}

TEST_CASE("subprocess adapter with no time left returns Timeout without running") {
  Adapter cat = make_subprocess_adapter({"/bin/cat", {}, ""});
  AdapterRequest req;
  req.deadline_secs = 0;
  auto r = cat(req);
  REQUIRE(r.is_ok());
  CHECK(r.value().status == AdapterResponse::Status::Timeout);
}

TEST_CASE("subprocess adapter fails the Result when the tool cannot run") {
  Adapter missing = make_subprocess_adapter({"/no/such/tool", {}, ""});
  AdapterRequest req;
  req.deadline_secs = 10;
  auto r = missing(req);
  REQUIRE_FALSE(r.is_ok());
  CHECK(r.error().find("cannot execute") != std::string::npos);

  Adapter odd_exit = make_subprocess_adapter({"/bin/sh", {"-c", "cat >/dev/null; exit 3"}, ""});
  auto r2 = odd_exit(req);
  REQUIRE_FALSE(r2.is_ok());
  CHECK(r2.error().find("status 3") != std::string::npos);
}

// ── SyGuS verifier ───────────────────────────────────────────────────

TEST_CASE("sygus verifier passes a correct candidate") {
  Benchmark b = sygus_bench(kMiProblem);
  SygusVerifier verifier;
  auto r = verifier.verify(b, "(define-fun mi ((x Int) (y Int)) Int (ite (<= x y) x y))", 60);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK_MESSAGE(r.value().kind == VerdictKind::Pass, kind_name(r));
}

TEST_CASE("sygus verifier reports a counterexample for a wrong candidate") {
  Benchmark b = sygus_bench(kMiProblem);
  SygusVerifier verifier;
  auto r = verifier.verify(b, "(define-fun mi ((x Int) (y Int)) Int (ite (<= x y) y x))", 60);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  REQUIRE_MESSAGE(r.value().kind == VerdictKind::SemanticFail, kind_name(r));
  REQUIRE(r.value().detail.has_value());
  CHECK(r.value().detail->find("fails at") != std::string::npos);
  CHECK(r.value().detail->find("x = ") != std::string::npos);
  CHECK(r.value().detail->find("y = ") != std::string::npos);
}

TEST_CASE("sygus verifier classifies malformed and mis-typed candidates as SyntaxFail") {
  Benchmark b = sygus_bench(kMiProblem);
  SygusVerifier verifier;

  auto broken = verifier.verify(b, "(define-fun mi ((x Int) (y Int)) Int (ite", 60);
  REQUIRE(broken.is_ok());
  CHECK_MESSAGE(broken.value().kind == VerdictKind::SyntaxFail, kind_name(broken));

  auto wrong_sig =
      verifier.verify(b, "(define-fun mi ((x Int) (y Int)) Bool (<= x y))", 60);
  REQUIRE(wrong_sig.is_ok());
  CHECK_MESSAGE(wrong_sig.value().kind == VerdictKind::SyntaxFail, kind_name(wrong_sig));
}

TEST_CASE("sygus verifier gates candidates on the declared grammar") {
  Benchmark b = sygus_bench(kMiProblem);
  SygusVerifier verifier;
  auto r = verifier.verify(b, "(define-fun mi ((x Int) (y Int)) Int (- x y))", 60);
  REQUIRE(r.is_ok());
  REQUIRE_MESSAGE(r.value().kind == VerdictKind::GrammarFail, kind_name(r));
  REQUIRE(r.value().detail.has_value());
  CHECK(r.value().detail->find("mi") != std::string::npos);
}

TEST_CASE("sygus verifier fails the run when the theory needs a missing solver") {
  const char* string_problem =
      "(set-logic SLIA)\n"
      "(synth-fun f ((s String)) String)\n"
      "(declare-var s String)\n"
      "(constraint (= (f s) s))\n"
      "(check-synth)\n";
  Benchmark b = sygus_bench(string_problem, "sy-strings");
  SygusVerifier verifier;
  auto r = verifier.verify(b, "(define-fun f ((s String)) String s)", 60);
  REQUIRE_FALSE(r.is_ok());
  CHECK(r.error().find("unsupported sort") != std::string::npos);
}

TEST_CASE("sygus verifier defers unsupported theories to the external solver") {
  const char* string_problem =
      "(set-logic SLIA)\n"
      "(synth-fun f ((s String)) String)\n"
      "(declare-var s String)\n"
      "(constraint (= (f s) s))\n"
      "(check-synth)\n";
  Benchmark b = sygus_bench(string_problem, "sy-strings");
  const std::string candidate = "(define-fun f ((s String)) String s)";

  ScriptedAdapter unsat;
  unsat.respond(AdapterResponse::Status::Pass, "unsat\n");
  auto pass = SygusVerifier({}, unsat.adapter()).verify(b, candidate, 60);
  REQUIRE_MESSAGE(pass.is_ok(), pass.error());
  CHECK_MESSAGE(pass.value().kind == VerdictKind::Pass, kind_name(pass));
  REQUIRE(unsat.log->size() == 1);
  CHECK(unsat.log->front().payload.find("(check-sat)") != std::string::npos);
  CHECK(unsat.log->front().payload.find("(define-fun f") != std::string::npos);

  ScriptedAdapter sat;
  sat.respond(AdapterResponse::Status::Fail, "sat\n(model (define-fun s () String \"a\"))");
  auto refuted = SygusVerifier({}, sat.adapter()).verify(b, candidate, 60);
  REQUIRE(refuted.is_ok());
  REQUIRE_MESSAGE(refuted.value().kind == VerdictKind::SemanticFail, kind_name(refuted));
  CHECK(refuted.value().detail->find("counterexample") != std::string::npos);

  ScriptedAdapter unknown;
  unknown.respond(AdapterResponse::Status::Pass, "unknown\n");
  auto gave_up = SygusVerifier({}, unknown.adapter()).verify(b, candidate, 60);
  REQUIRE(gave_up.is_ok());
  CHECK_MESSAGE(gave_up.value().kind == VerdictKind::VerifyTimeout, kind_name(gave_up));
}

TEST_CASE("sygus verifier respects the deadline and requires a payload") {
  Benchmark b = sygus_bench(kMiProblem);
  SygusVerifier verifier;
  auto out_of_time =
      verifier.verify(b, "(define-fun mi ((x Int) (y Int)) Int x)", 0);
  REQUIRE(out_of_time.is_ok());
  CHECK(out_of_time.value().kind == VerdictKind::VerifyTimeout);

  Benchmark empty;
  empty.id = "sy-empty";
  empty.domain = DomainKind::Sygus;
  auto missing = verifier.verify(empty, "(define-fun f () Int 0)", 60);
  CHECK_FALSE(missing.is_ok());
}

// ── reactive verifier, AIGER target ──────────────────────────────────

TEST_CASE("reactive verifier passes a correct AIGER circuit") {
  Benchmark b = reactive_bench(ReactiveTarget::Aiger);
  ReactiveVerifier verifier;
  auto r = verifier.verify(b, kAndGateAiger, 60);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK_MESSAGE(r.value().kind == VerdictKind::Pass, kind_name(r));
}

TEST_CASE("reactive verifier finds the violated guarantee of an OR circuit") {
  Benchmark b = reactive_bench(ReactiveTarget::Aiger);
  ReactiveVerifier verifier;
  const char* or_circuit =
      "REALIZABLE\n"
      "aag 3 2 0 1 1\n2\n4\n7\n6 3 5\n"
      "i0 a\ni1 b\no0 outp\n";
  auto r = verifier.verify(b, or_circuit, 60);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  REQUIRE_MESSAGE(r.value().kind == VerdictKind::SemanticFail, kind_name(r));
  CHECK(r.value().detail->find("guarantee") != std::string::npos);
  CHECK(r.value().detail->find("violated") != std::string::npos);
}

TEST_CASE("reactive verifier maps AIGER failure modes onto verdict kinds") {
  Benchmark b = reactive_bench(ReactiveTarget::Aiger);
  ReactiveVerifier verifier;

  auto odd_lhs = verifier.verify(
      b, "REALIZABLE\naag 3 2 0 1 1\n2\n4\n6\n7 2 4\ni0 a\ni1 b\no0 outp\n", 60);
  REQUIRE(odd_lhs.is_ok());
  CHECK_MESSAGE(odd_lhs.value().kind == VerdictKind::SyntaxFail, kind_name(odd_lhs));

  auto renamed = verifier.verify(
      b, "REALIZABLE\naag 3 2 0 1 1\n2\n4\n6\n6 2 4\ni0 x\ni1 b\no0 outp\n", 60);
  REQUIRE(renamed.is_ok());
  CHECK_MESSAGE(renamed.value().kind == VerdictKind::GrammarFail, kind_name(renamed));

  auto unrealizable = verifier.verify(
      b, "aag 3 2 0 1 1\n2\n4\n6\n6 2 4\ni0 a\ni1 b\no0 outp\n", 60);
  REQUIRE(unrealizable.is_ok());
  REQUIRE_MESSAGE(unrealizable.value().kind == VerdictKind::SemanticFail, kind_name(unrealizable));
  CHECK(unrealizable.value().detail->find("REALIZABLE") != std::string::npos);
}

// ── reactive verifier, SMV target ────────────────────────────────────

TEST_CASE("reactive verifier passes a stateless SMV module") {
  Benchmark b = reactive_bench(ReactiveTarget::Smv);
  ReactiveVerifier verifier;
  const char* module =
      "MODULE main\n"
      "IVAR\n  a : boolean;\n  b : boolean;\n"
      "DEFINE\n  outp := a & b;\n";
  auto r = verifier.verify(b, module, 60);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK_MESSAGE(r.value().kind == VerdictKind::Pass, kind_name(r));
}

TEST_CASE("reactive verifier maps SMV failure modes onto verdict kinds") {
  Benchmark b = reactive_bench(ReactiveTarget::Smv);
  ReactiveVerifier verifier;

  auto bad_operator = verifier.verify(
      b, "MODULE main\nIVAR\n  a : boolean;\n  b : boolean;\nDEFINE\n  outp := a && b;\n", 60);
  REQUIRE(bad_operator.is_ok());
  CHECK_MESSAGE(bad_operator.value().kind == VerdictKind::SyntaxFail, kind_name(bad_operator));

  auto renamed = verifier.verify(
      b, "MODULE main\nIVAR\n  a : boolean;\n  b : boolean;\nDEFINE\n  out := a & b;\n", 60);
  REQUIRE(renamed.is_ok());
  CHECK_MESSAGE(renamed.value().kind == VerdictKind::GrammarFail, kind_name(renamed));

  auto wrong_gate = verifier.verify(
      b, "MODULE main\nIVAR\n  a : boolean;\n  b : boolean;\nDEFINE\n  outp := a | b;\n", 60);
  REQUIRE(wrong_gate.is_ok());
  REQUIRE_MESSAGE(wrong_gate.value().kind == VerdictKind::SemanticFail, kind_name(wrong_gate));
  CHECK(wrong_gate.value().detail->find("guarantee") != std::string::npos);
}

TEST_CASE("reactive verifier routes temporal guarantees to the external checker") {
  const char* temporal_tlsf =
      "INFO { TITLE: \"eventually\" SEMANTICS: Mealy TARGET: Mealy }\n"
      "MAIN {\n"
      "  INPUTS { a; }\n"
      "  OUTPUTS { outp; }\n"
      "  GUARANTEES { F(outp); }\n"
      "}\n";
  Benchmark b = reactive_bench(ReactiveTarget::Smv, temporal_tlsf);
  const char* module = "MODULE main\nIVAR\n  a : boolean;\nDEFINE\n  outp := a;\n";

  ReactiveVerifier bare;
  auto unrunnable = bare.verify(b, module, 60);
  REQUIRE_FALSE(unrunnable.is_ok());
  CHECK(unrunnable.error().find("external model checker") != std::string::npos);

  ScriptedAdapter checker;
  checker.respond(AdapterResponse::Status::Pass);
  ReactiveVerifier::Options options;
  options.external_checker = checker.adapter();
  ReactiveVerifier with_checker{options};
  auto ok = with_checker.verify(b, module, 60);
  REQUIRE_MESSAGE(ok.is_ok(), ok.error());
  CHECK_MESSAGE(ok.value().kind == VerdictKind::Pass, kind_name(ok));
  REQUIRE(checker.log->size() == 1);
  CHECK(checker.log->front().payload == module);
  CHECK(checker.log->front().args == std::vector<std::string>{"F(outp)"});
}

// ── TLA sketch verifier ──────────────────────────────────────────────

TEST_CASE("sketch verifier substitutes the mapping and forwards to the checker") {
  Benchmark b = tla_bench();
  ScriptedAdapter checker;
  checker.respond(AdapterResponse::Status::Pass);
  TlaSketchVerifier verifier{checker.adapter()};

  auto r = verifier.verify(b, R"({"H1": "x' = x + 1"})", 60);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK_MESSAGE(r.value().kind == VerdictKind::Pass, kind_name(r));
  REQUIRE(checker.log->size() == 1);
  CHECK(checker.log->front().payload.find("Increment == x' = x + 1") != std::string::npos);
  CHECK(checker.log->front().payload.find("<<HOLE:") == std::string::npos);
  CHECK(checker.log->front().args == std::vector<std::string>{"TypeOK", "Safety"});
}

TEST_CASE("sketch verifier classifies mapping problems before running the checker") {
  Benchmark b = tla_bench();
  ScriptedAdapter checker;
  checker.respond(AdapterResponse::Status::Pass);
  TlaSketchVerifier verifier{checker.adapter()};

  auto malformed = verifier.verify(b, "not json at all", 60);
  REQUIRE(malformed.is_ok());
  CHECK_MESSAGE(malformed.value().kind == VerdictKind::SyntaxFail, kind_name(malformed));

  auto wrong_key = verifier.verify(b, R"({"H2": "x' = x + 1"})", 60);
  REQUIRE(wrong_key.is_ok());
  CHECK_MESSAGE(wrong_key.value().kind == VerdictKind::SyntaxFail, kind_name(wrong_key));

  auto off_grammar = verifier.verify(b, R"({"H1": "x' = x + 2"})", 60);
  REQUIRE(off_grammar.is_ok());
  CHECK_MESSAGE(off_grammar.value().kind == VerdictKind::GrammarFail, kind_name(off_grammar));

  CHECK(checker.log->empty());
}

TEST_CASE("relaxed sketches skip the grammar gate") {
  Benchmark b = tla_bench(true);
  ScriptedAdapter checker;
  checker.respond(AdapterResponse::Status::Pass);
  TlaSketchVerifier verifier{checker.adapter()};
  auto r = verifier.verify(b, R"({"H1": "x' = x + 2"})", 60);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK_MESSAGE(r.value().kind == VerdictKind::Pass, kind_name(r));
  CHECK(checker.log->size() == 1);
}

TEST_CASE("sketch verifier forwards checker failures and timeouts") {
  Benchmark b = tla_bench();
  ScriptedAdapter checker;
  checker.respond(AdapterResponse::Status::Fail, "Invariant Safety is violated");
  checker.respond(AdapterResponse::Status::Timeout);
  TlaSketchVerifier verifier{checker.adapter()};

  auto refuted = verifier.verify(b, R"({"H1": "x' = x"})", 60);
  REQUIRE(refuted.is_ok());
  REQUIRE_MESSAGE(refuted.value().kind == VerdictKind::SemanticFail, kind_name(refuted));
  CHECK(*refuted.value().detail == "Invariant Safety is violated");

  auto slow = verifier.verify(b, R"({"H1": "x' = x"})", 60);
  REQUIRE(slow.is_ok());
  CHECK_MESSAGE(slow.value().kind == VerdictKind::VerifyTimeout, kind_name(slow));
}

TEST_CASE("sketch cache keys ignore mapping layout") {
  Benchmark b = tla_bench();
  ScriptedAdapter checker;
  checker.respond(AdapterResponse::Status::Pass);
  TlaSketchVerifier verifier{checker.adapter()};

  std::string compact = verifier.canonical_key(b, R"({"H1":"x' = x + 1"})");
  std::string spaced = verifier.canonical_key(b, "{ \"H1\" :\n  \"x' = x + 1\" }");
  CHECK(compact == spaced);
  CHECK(compact != verifier.canonical_key(b, R"({"H1":"x' = x"})"));
  // Unparseable candidates fall back to the layout-normalized text.
  CHECK(verifier.canonical_key(b, "garbage one") != verifier.canonical_key(b, "garbage two"));
}

// ── recursive-function sketch verifier ───────────────────────────────

TEST_CASE("lisp verifier sends the full session to the counterexample generator") {
  Benchmark b = lisp_bench();
  ScriptedAdapter cgen;
  cgen.respond(AdapterResponse::Status::Pass);
  LispSketchVerifier verifier{cgen.adapter()};

  const char* candidate =
      "(defunc app (x y) (if (consp x) (cons (car x) (app (cdr x) y)) y))";
  auto r = verifier.verify(b, candidate, 60);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK_MESSAGE(r.value().kind == VerdictKind::Pass, kind_name(r));
  REQUIRE(cgen.log->size() == 1);
  const std::string& payload = cgen.log->front().payload;
  CHECK(payload.find("(defdata tl") != std::string::npos);
  CHECK(payload.find("(defunc app") != std::string::npos);
  CHECK(payload.find("app-assoc") != std::string::npos);
  CHECK(payload.find("(check=") != std::string::npos);
  CHECK(payload.find("(defdata tl") < payload.find("(defunc app"));
  CHECK(payload.find("(defunc app") < payload.find("app-assoc"));
}

TEST_CASE("lisp verifier rejects structurally invalid candidates itself") {
  Benchmark b = lisp_bench();
  ScriptedAdapter cgen;
  cgen.respond(AdapterResponse::Status::Pass);
  LispSketchVerifier verifier{cgen.adapter()};

  auto unbalanced = verifier.verify(b, "(defunc app (x y) (if (consp x)", 60);
  REQUIRE(unbalanced.is_ok());
  CHECK_MESSAGE(unbalanced.value().kind == VerdictKind::SyntaxFail, kind_name(unbalanced));

  auto unknown_symbol =
      verifier.verify(b, "(defunc app (x y) (frobnicate x y))", 60);
  REQUIRE(unknown_symbol.is_ok());
  CHECK_MESSAGE(unknown_symbol.value().kind == VerdictKind::SyntaxFail, kind_name(unknown_symbol));

  auto wrong_arity = verifier.verify(b, "(defunc app (x) x)", 60);
  REQUIRE(wrong_arity.is_ok());
  CHECK_MESSAGE(wrong_arity.value().kind == VerdictKind::SyntaxFail, kind_name(wrong_arity));

  CHECK(cgen.log->empty());
}

TEST_CASE("lisp verifier forwards cgen verdicts") {
  Benchmark b = lisp_bench();
  const char* candidate =
      "(defunc app (x y) (if (consp x) (cons (car x) (app (cdr x) y)) y))";

  ScriptedAdapter failing;
  failing.respond(AdapterResponse::Status::Fail, "counterexample: x = (1), y = nil");
  auto refuted = LispSketchVerifier{failing.adapter()}.verify(b, candidate, 60);
  REQUIRE(refuted.is_ok());
  REQUIRE_MESSAGE(refuted.value().kind == VerdictKind::SemanticFail, kind_name(refuted));
  CHECK(refuted.value().detail->find("counterexample") != std::string::npos);

  ScriptedAdapter dead;
  dead.fail_with("acl2s binary not found");
  auto unrunnable = LispSketchVerifier{dead.adapter()}.verify(b, candidate, 60);
  REQUIRE_FALSE(unrunnable.is_ok());
  CHECK(unrunnable.error().find("acl2s") != std::string::npos);
}

// ── benchmark loading ────────────────────────────────────────────────

TEST_CASE("load_benchmark reads each domain from disk") {
  std::string sy_path = write_fixture("mi.sl", kMiProblem);
  auto sy = load_benchmark(DomainKind::Sygus, sy_path);
  REQUIRE_MESSAGE(sy.is_ok(), sy.error());
  CHECK(sy.value().id == "mi");
  CHECK(sy.value().spec_text == kMiProblem);
  const auto* sy_payload = std::get_if<SygusPayload>(&sy.value().aux);
  REQUIRE(sy_payload);
  CHECK(sy_payload->problem.synth_funs.at(0).name == "mi");

  std::string tlsf_path = write_fixture("and_gate.tlsf", kAndGateTlsf);
  LoadOptions smv_opts;
  smv_opts.target = ReactiveTarget::Smv;
  auto re = load_benchmark(DomainKind::Reactive, tlsf_path, smv_opts);
  REQUIRE_MESSAGE(re.is_ok(), re.error());
  CHECK(re.value().id == "and_gate");
  const auto* re_payload = std::get_if<ReactivePayload>(&re.value().aux);
  REQUIRE(re_payload);
  CHECK(re_payload->target == ReactiveTarget::Smv);
  CHECK(re_payload->tlsf.outputs == std::vector<std::string>{"outp"});

  std::string tla_path = write_fixture("counter.tla", kCounterSketch);
  write_fixture("counter.tla.json", kCounterSidecar);
  LoadOptions tla_opts;
  tla_opts.relaxed_grammar = true;
  auto tla = load_benchmark(DomainKind::TlaSketch, tla_path, tla_opts);
  REQUIRE_MESSAGE(tla.is_ok(), tla.error());
  CHECK(tla.value().id == "counter");
  const auto* tla_payload = std::get_if<TlaSketchPayload>(&tla.value().aux);
  REQUIRE(tla_payload);
  CHECK(tla_payload->sketch.holes.size() == 1);
  CHECK(tla_payload->relaxed_grammar);

  std::string lisp_path = write_fixture("app.lisp", kAppBundle);
  auto lisp = load_benchmark(DomainKind::Acl2sSketch, lisp_path);
  REQUIRE_MESSAGE(lisp.is_ok(), lisp.error());
  CHECK(lisp.value().id == "app");
  const auto* lisp_payload = std::get_if<Acl2sPayload>(&lisp.value().aux);
  REQUIRE(lisp_payload);
  CHECK(lisp_payload->bundle.signatures.at(0).name == "app");
}

TEST_CASE("load_benchmark reports missing files and parse errors with the path") {
  auto missing = load_benchmark(DomainKind::Sygus, "/no/such/file.sl");
  REQUIRE_FALSE(missing.is_ok());
  CHECK(missing.error().find("cannot read") != std::string::npos);

  std::string bad_path = write_fixture("bad.sl", "(synth-fun oops");
  auto bad = load_benchmark(DomainKind::Sygus, bad_path);
  REQUIRE_FALSE(bad.is_ok());
  CHECK(bad.error().find("bad.sl") != std::string::npos);
}

// ── end to end: enumerator + verifier inside the loop ────────────────

TEST_CASE("the loop drives the enumerator to a verified solution") {
  const char* spec =
      "(set-logic LIA)\n"
      "(synth-fun f () Int ((S Int)) ((S Int (0 1 2 3 4))))\n"
      "(constraint (= (f) 3))\n"
      "(check-synth)\n";
  Benchmark b = sygus_bench(spec, "pick-three");

  EnumeratorGenerator generator;
  SygusVerifier verifier;
  HarnessOptions options;
  options.method = "enumerator:ilst";
  auto r = run_ilst(b, generator, verifier, Budget{60, 0}, options);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  const RunRecord& rec = r.value();
  CHECK(rec.solved);
  CHECK(rec.final_status == FinalStatus::Solved);
  CHECK(rec.iterations_total == 4);
  CHECK(rec.method == "enumerator:ilst");
  REQUIRE_FALSE(rec.verdicts.empty());
  CHECK(rec.verdicts.back().second.kind == VerdictKind::Pass);
  CHECK(rec.verdicts.back().first.extracted ==
        std::optional<std::string>{"(define-fun f () Int 3)"});
}
