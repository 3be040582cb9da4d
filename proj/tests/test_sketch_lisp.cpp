#include "doctest.h"
#include "veriloop/sketch_lisp.hpp"

using namespace veriloop;

namespace {

const char* kBundle = R"lisp((signatures (app 2 (x y)))
(primitives (cons 2) (car 1) (cdr 1) (consp 1))
(terminals x y nil)
(properties "(property app-assoc (x :tl y :tl z :tl) (equal (app (app x y) z) (app x (app y z))))")
(io-examples "(check= (app (cons 1 nil) (cons 2 nil)) (cons 1 (cons 2 nil)))")
(datatypes "(defdata tl (listof all))")
(definitions "")
(sketches "(defunc app (x y) (if (consp x) <BODY> y))")
(grammar "B -> y | (cons (car x) (app (cdr x) y))")
)lisp";

LispBenchmark app_benchmark() {
  auto b = parse_lisp_bundle(kBundle);
  REQUIRE_MESSAGE(b.is_ok(), b.error());
  return b.take();
}

std::vector<Term> candidates_of(const std::string& text) {
  auto terms = parse_sexprs(text);
  REQUIRE_MESSAGE(terms.is_ok(), terms.error());
  return terms.take();
}

const char* kGoodApp =
    "(defunc app (x y) (if (consp x) (cons (car x) (app (cdr x) y)) y))";

}  // namespace

TEST_CASE("bundle parsing fills every section") {
  LispBenchmark b = app_benchmark();
  REQUIRE(b.signatures.size() == 1);
  CHECK(b.signatures[0].name == "app");
  CHECK(b.signatures[0].arity == 2);
  CHECK(b.signatures[0].param_names == std::vector<std::string>{"x", "y"});
  CHECK(b.primitives.at("cons") == 2);
  CHECK(b.primitives.at("car") == 1);
  CHECK(b.terminals == std::vector<std::string>{"x", "y", "nil"});
  CHECK(b.properties_text.find("app-assoc") != std::string::npos);
  CHECK(b.io_examples_text.find("check=") != std::string::npos);
  CHECK(b.sketches_text.find("<BODY>") != std::string::npos);
  CHECK(b.grammar_text.find("cons") != std::string::npos);
  CHECK_FALSE(b.strict_terminals);
}

TEST_CASE("bundle parsing rejects inconsistent declarations") {
  auto arity = parse_lisp_bundle("(signatures (app 3 (x y)))");
  REQUIRE_FALSE(arity.is_ok());
  CHECK(arity.error().find("declares arity 3 but lists 2") != std::string::npos);

  auto clash = parse_lisp_bundle("(signatures (cons 2 (x y)))\n(primitives (cons 2))");
  REQUIRE_FALSE(clash.is_ok());
  CHECK(clash.error().find("collides with a primitive") != std::string::npos);

  CHECK_FALSE(parse_lisp_bundle("(surprises 1 2)").is_ok());
  CHECK_FALSE(parse_lisp_bundle("(properties not-a-string)").is_ok());
}

TEST_CASE("a well-formed definition validates") {
  LispBenchmark b = app_benchmark();
  auto r = validate_candidate(candidates_of(kGoodApp), b);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
}

TEST_CASE("typed definec-style definitions validate too") {
  LispBenchmark b = app_benchmark();
  auto r = validate_candidate(
      candidates_of(
          "(definec app (x :tl y :tl) :tl (if (consp x) (cons (car x) (app (cdr x) y)) y))"),
      b);
  REQUIRE_MESSAGE(r.is_ok(), r.error());
}

TEST_CASE("mismatched parentheses fail at parse time") {
  CHECK_FALSE(parse_sexprs("(defunc app (x y) (cons x y)").is_ok());
  CHECK_FALSE(parse_sexprs("(foo x").is_ok());
}

TEST_CASE("arity violations are named") {
  LispBenchmark b = app_benchmark();
  auto r = validate_candidate(candidates_of("(defunc app (x y) (cons x))"), b);
  REQUIRE_FALSE(r.is_ok());
  CHECK(r.error() == "cons applied to 1 arguments, expected 2");

  auto r2 = validate_candidate(candidates_of("(defunc app (x y) (if (consp x) y))"), b);
  REQUIRE_FALSE(r2.is_ok());
  CHECK(r2.error().find("if applied to 2") != std::string::npos);
}

TEST_CASE("unknown applied symbols are rejected") {
  LispBenchmark b = app_benchmark();
  auto r = validate_candidate(candidates_of("(defunc app (x y) (glue x y))"), b);
  REQUIRE_FALSE(r.is_ok());
  CHECK(r.error() == "unknown function: glue");
}

TEST_CASE("the definition set must match the signatures exactly") {
  LispBenchmark b = app_benchmark();

  auto missing = validate_candidate({}, b);
  REQUIRE_FALSE(missing.is_ok());
  CHECK(missing.error() == "missing definition for app");

  auto wrong_name = validate_candidate(candidates_of("(defunc rev (x) x)"), b);
  REQUIRE_FALSE(wrong_name.is_ok());
  CHECK(wrong_name.error().find("undeclared function rev") != std::string::npos);

  auto dup = validate_candidate(
      candidates_of(std::string(kGoodApp) + "\n" + kGoodApp), b);
  REQUIRE_FALSE(dup.is_ok());
  CHECK(dup.error().find("duplicate definition of app") != std::string::npos);

  auto wrong_params = validate_candidate(candidates_of("(defunc app (x) x)"), b);
  REQUIRE_FALSE(wrong_params.is_ok());
  CHECK(wrong_params.error().find("defined with 1 parameters, expected 2") != std::string::npos);

  auto not_a_def = validate_candidate(candidates_of("(cons 1 2)"), b);
  REQUIRE_FALSE(not_a_def.is_ok());
}

TEST_CASE("strict terminal mode rejects undeclared leaves, relaxed allows them") {
  LispBenchmark b = app_benchmark();
  auto relaxed = validate_candidate(candidates_of("(defunc app (x y) (cons z y))"), b);
  CHECK(relaxed.is_ok());

  b.strict_terminals = true;
  auto strict = validate_candidate(candidates_of("(defunc app (x y) (cons z y))"), b);
  REQUIRE_FALSE(strict.is_ok());
  CHECK(strict.error() == "unknown terminal: z");

  // Numerals and booleans are always acceptable leaves.
  auto literals = validate_candidate(candidates_of("(defunc app (x y) (cons 1 nil))"), b);
  CHECK(literals.is_ok());

  auto flagged = parse_lisp_bundle("(signatures (f 1 (n)))\n(strict-terminals)");
  REQUIRE_MESSAGE(flagged.is_ok(), flagged.error());
  CHECK(flagged.value().strict_terminals);
}

TEST_CASE("mutually recursive definitions may call each other") {
  auto b = parse_lisp_bundle(
      "(signatures (evenp2 1 (n)) (oddp2 1 (n)))\n(primitives (zp 1) (1- 1))\n(terminals n)");
  REQUIRE_MESSAGE(b.is_ok(), b.error());
  auto r = validate_candidate(
      candidates_of("(defunc evenp2 (n) (if (zp n) t (oddp2 (1- n))))\n"
                    "(defunc oddp2 (n) (if (zp n) nil (evenp2 (1- n))))"),
      b.value());
  REQUIRE_MESSAGE(r.is_ok(), r.error());
}

TEST_CASE("counterexample generator outcomes map onto verdicts") {
  LispBenchmark b = app_benchmark();
  std::vector<Term> good = candidates_of(kGoodApp);

  AdapterRequest seen;
  Adapter pass = [&seen](const AdapterRequest& request) {
    seen = request;
    return Result<AdapterResponse>::ok({AdapterResponse::Status::Pass, ""});
  };
  auto ok = verify_with_cgen(good, b, pass, 30);
  REQUIRE_MESSAGE(ok.is_ok(), ok.error());
  CHECK(ok.value().kind == VerdictKind::Pass);
  CHECK(seen.deadline_secs == 30);
  // The payload is self-contained: context, candidate, then the checks.
  CHECK(seen.payload.find("defdata tl") != std::string::npos);
  CHECK(seen.payload.find("(defunc app (x y)") != std::string::npos);
  CHECK(seen.payload.find("app-assoc") != std::string::npos);
  CHECK(seen.payload.find("check=") != std::string::npos);
  CHECK(seen.payload.find("defdata tl") < seen.payload.find("(defunc app"));
  CHECK(seen.payload.find("(defunc app") < seen.payload.find("app-assoc"));

  Adapter cex = [](const AdapterRequest&) {
    return Result<AdapterResponse>::ok(
        {AdapterResponse::Status::Fail, "((x (1)) (y nil) (z (2)))"});
  };
  auto fail = verify_with_cgen(good, b, cex, 30);
  REQUIRE_MESSAGE(fail.is_ok(), fail.error());
  CHECK(fail.value().kind == VerdictKind::SemanticFail);
  CHECK(*fail.value().detail == "((x (1)) (y nil) (z (2)))");

  Adapter slow = [](const AdapterRequest&) {
    return Result<AdapterResponse>::ok({AdapterResponse::Status::Timeout, ""});
  };
  auto timeout = verify_with_cgen(good, b, slow, 30);
  REQUIRE_MESSAGE(timeout.is_ok(), timeout.error());
  CHECK(timeout.value().kind == VerdictKind::VerifyTimeout);

  Adapter dead = [](const AdapterRequest&) {
    return Result<AdapterResponse>::fail("generator binary missing");
  };
  auto err = verify_with_cgen(good, b, dead, 30);
  REQUIRE_FALSE(err.is_ok());
}
