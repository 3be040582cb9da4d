#include <random>

#include "doctest.h"
#include "veriloop/sygus.hpp"

using namespace veriloop;

namespace {

const char* kMiProblem =
    "(set-logic LIA)\n"
    "\n"
    "(synth-fun mi ((x Int) (y Int)) Int\n"
    "    ((S Int) (I Int))\n"
    "    ((S Int ((ite (<= I I) I I)))\n"
    "     (I Int (x y))))\n"
    "\n"
    "(declare-var x Int)\n"
    "(declare-var y Int)\n"
    "(constraint (=> (>= x y) (= (mi x y) y)))\n"
    "(constraint (=> (>= y x) (= (mi x y) x)))\n"
    "\n"
    "(check-synth)\n";

const char* kMiSolution = "(define-fun mi ((x Int) (y Int)) Int (ite (<= x y) x y))";
const char* kMiSwapped = "(define-fun mi ((x Int) (y Int)) Int (ite (<= x y) y x))";

SygusProblem mi_problem() {
  auto p = parse_sygus(kMiProblem);
  REQUIRE_MESSAGE(p.is_ok(), p.error());
  return p.take();
}

CandidateDefs defs_of(const std::string& text) {
  auto d = parse_candidate_defs(text);
  REQUIRE_MESSAGE(d.is_ok(), d.error());
  return d.take();
}

Value eval_ok(const std::string& text, const Env& env = {}, const CandidateDefs& defs = {}) {
  auto t = parse_sexpr(text);
  REQUIRE_MESSAGE(t.is_ok(), t.error());
  auto v = eval_term(t.value(), env, defs);
  REQUIRE_MESSAGE(v.is_ok(), v.error());
  return v.take();
}

std::string eval_err(const std::string& text, const Env& env = {},
                     const CandidateDefs& defs = {}) {
  auto t = parse_sexpr(text);
  REQUIRE_MESSAGE(t.is_ok(), t.error());
  auto v = eval_term(t.value(), env, defs);
  REQUIRE_FALSE(v.is_ok());
  return v.error();
}

}  // namespace

TEST_CASE("parse recognizes the min-of-two problem") {
  SygusProblem p = mi_problem();
  CHECK(p.logic == "LIA");
  REQUIRE(p.synth_funs.size() == 1);
  const SynthFun& f = p.synth_funs[0];
  CHECK(f.name == "mi");
  REQUIRE(f.params.size() == 2);
  CHECK(f.params[0] == std::pair<std::string, SortName>("x", "Int"));
  CHECK(f.params[1] == std::pair<std::string, SortName>("y", "Int"));
  CHECK(f.return_sort == "Int");
  REQUIRE(f.grammar.has_value());
  CHECK(f.grammar->start == "S");
  CHECK(f.grammar->nonterminals == std::vector<std::string>{"S", "I"});
  CHECK(f.grammar->productions.at("S").size() == 1);
  CHECK(f.grammar->productions.at("I").size() == 2);
  REQUIRE(p.declared_vars.size() == 2);
  CHECK(p.declared_vars[0].first == "x");
  CHECK(p.declared_vars[1].first == "y");
  REQUIRE(p.constraints.size() == 2);
  CHECK(print_term(p.constraints[0]) == "(=> (>= x y) (= (mi x y) y))");
}

TEST_CASE("parse rejects unsupported and unknown commands") {
  auto inv = parse_sygus("(synth-inv f ((x Int)))\n(check-synth)\n");
  REQUIRE_FALSE(inv.is_ok());
  CHECK(inv.error().find("unsupported feature: synth-inv") != std::string::npos);

  auto unk = parse_sygus("(frobnicate 1)\n(check-synth)\n");
  REQUIRE_FALSE(unk.is_ok());
  CHECK(unk.error().find("unknown command: frobnicate") != std::string::npos);

  auto meta = parse_sygus(
      "(synth-fun f ((x Int)) Int ((S Int)) ((S Int ((Constant Int)))))\n(check-synth)\n");
  REQUIRE_FALSE(meta.is_ok());
  CHECK(meta.error().find("unsupported feature: Constant") != std::string::npos);

  CHECK_FALSE(parse_sygus("").is_ok());
  CHECK_FALSE(parse_sygus("(set-logic LIA)\n").is_ok());  // no synth-fun, no check-synth
}

TEST_CASE("parse validates names used in constraints") {
  auto bad_var = parse_sygus(
      "(synth-fun f ((x Int)) Int)\n(constraint (= (f z) 0))\n(check-synth)\n");
  REQUIRE_FALSE(bad_var.is_ok());
  CHECK(bad_var.error().find("unknown name: z") != std::string::npos);

  auto bad_fun = parse_sygus(
      "(synth-fun f ((x Int)) Int)\n(declare-var x Int)\n"
      "(constraint (= (g x) 0))\n(check-synth)\n");
  REQUIRE_FALSE(bad_fun.is_ok());
  CHECK(bad_fun.error().find("unknown function: g") != std::string::npos);

  auto dup = parse_sygus(
      "(synth-fun f ((x Int)) Int)\n(declare-var x Int)\n(declare-var x Int)\n(check-synth)\n");
  REQUIRE_FALSE(dup.is_ok());
  CHECK(dup.error().find("duplicate") != std::string::npos);
}

TEST_CASE("candidate parsing accepts only define-fun forms") {
  CandidateDefs d = defs_of(kMiSolution);
  REQUIRE(d.defs.size() == 1);
  CHECK(d.defs[0].name == "mi");
  CHECK(print_term(d.defs[0].body) == "(ite (<= x y) x y)");
  CHECK(d.find("mi") != nullptr);
  CHECK(d.find("nope") == nullptr);

  CHECK_FALSE(parse_candidate_defs("(assert true)").is_ok());
  CHECK_FALSE(parse_candidate_defs("").is_ok());
  CHECK_FALSE(parse_candidate_defs("(define-fun f ((x Int)) Int)").is_ok());
}

TEST_CASE("signature check is exact") {
  SygusProblem p = mi_problem();
  CHECK(check_signature(p, defs_of(kMiSolution)).is_ok());

  auto renamed = check_signature(
      p, defs_of("(define-fun mi ((a Int) (y Int)) Int (ite (<= a y) a y))"));
  REQUIRE_FALSE(renamed.is_ok());
  CHECK(renamed.error().find("parameter 1") != std::string::npos);

  auto wrong_sort = check_signature(
      p, defs_of("(define-fun mi ((x Int) (y Int)) Bool (<= x y))"));
  REQUIRE_FALSE(wrong_sort.is_ok());
  CHECK(wrong_sort.error().find("return sort") != std::string::npos);

  auto arity = check_signature(p, defs_of("(define-fun mi ((x Int)) Int x)"));
  REQUIRE_FALSE(arity.is_ok());
  CHECK(arity.error().find("parameter count") != std::string::npos);

  auto missing = check_signature(p, defs_of("(define-fun other ((x Int)) Int x)"));
  REQUIRE_FALSE(missing.is_ok());

  auto helper = check_signature(
      p, defs_of(std::string(kMiSolution) + "\n(define-fun aux ((x Int)) Int x)"));
  REQUIRE_FALSE(helper.is_ok());
  CHECK(helper.error().find("helper function not allowed: aux") != std::string::npos);
}

TEST_CASE("grammar conformance uses the declared grammar") {
  SygusProblem p = mi_problem();
  CHECK(check_grammar(p, defs_of(kMiSolution)).is_ok());
  CHECK(check_grammar(p, defs_of(kMiSwapped)).is_ok());

  auto off = check_grammar(p, defs_of("(define-fun mi ((x Int) (y Int)) Int (- x y))"));
  REQUIRE_FALSE(off.is_ok());
  CHECK(off.error().find("not derivable") != std::string::npos);

  // A synth-fun without a grammar accepts any body.
  auto free_p = parse_sygus(
      "(synth-fun f ((x Int)) Int)\n(declare-var x Int)\n"
      "(constraint (= (f x) x))\n(check-synth)\n");
  REQUIRE_MESSAGE(free_p.is_ok(), free_p.error());
  CHECK(check_grammar(free_p.value(), defs_of("(define-fun f ((x Int)) Int (+ x 0))")).is_ok());
}

TEST_CASE("integer evaluation follows Euclidean division") {
  CHECK(eval_ok("(div 7 2)") == Value::of_int(3));
  CHECK(eval_ok("(mod 7 2)") == Value::of_int(1));
  CHECK(eval_ok("(div (- 7) 2)") == Value::of_int(-4));
  CHECK(eval_ok("(mod (- 7) 2)") == Value::of_int(1));
  CHECK(eval_ok("(div 7 (- 2))") == Value::of_int(-3));
  CHECK(eval_ok("(mod 7 (- 2))") == Value::of_int(1));
  CHECK(eval_ok("(div (- 7) (- 2))") == Value::of_int(4));
  CHECK(eval_ok("(mod (- 7) (- 2))") == Value::of_int(1));
  // Totalized by-zero cases.
  CHECK(eval_ok("(div 5 0)") == Value::of_int(0));
  CHECK(eval_ok("(mod 5 0)") == Value::of_int(5));
  // Identity x = y*(div x y) + (mod x y) with 0 <= mod < |y|, spot-checked.
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    long long x = static_cast<long long>(rng() % 2001) - 1000;
    long long y = static_cast<long long>(rng() % 2001) - 1000;
    if (y == 0) continue;
    Env env{{"x", Value::of_int(x)}, {"y", Value::of_int(y)}};
    BigInt q = eval_ok("(div x y)", env).i;
    BigInt r = eval_ok("(mod x y)", env).i;
    CHECK(BigInt(x) == BigInt(y) * q + r);
    CHECK(r >= 0);
    CHECK(r < (y < 0 ? -BigInt(y) : BigInt(y)));
  }
}

TEST_CASE("arithmetic exceeds machine width without wrapping") {
  Value v = eval_ok("(* 1000000000000 1000000000000)");
  CHECK(v.to_string() == "1000000000000000000000000");
  CHECK(eval_ok("(+ 1 2 3 4)") == Value::of_int(10));
  CHECK(eval_ok("(- 10 1 2)") == Value::of_int(7));
  CHECK(eval_ok("(- 3)") == Value::of_int(-3));
  CHECK(eval_ok("(abs (- 5))") == Value::of_int(5));
}

TEST_CASE("boolean connectives and chained comparisons") {
  CHECK(eval_ok("(and true true false)") == Value::of_bool(false));
  CHECK(eval_ok("(or false false)") == Value::of_bool(false));
  CHECK(eval_ok("(xor true true true)") == Value::of_bool(true));
  CHECK(eval_ok("(=> false true)") == Value::of_bool(true));
  // Right-associated: a => (b => c).
  CHECK(eval_ok("(=> true false false)") == Value::of_bool(true));
  CHECK(eval_ok("(< 1 2 3)") == Value::of_bool(true));
  CHECK(eval_ok("(< 1 2 2)") == Value::of_bool(false));
  CHECK(eval_ok("(= 2 2 2)") == Value::of_bool(true));
  CHECK(eval_ok("(distinct 1 2 3)") == Value::of_bool(true));
  CHECK(eval_ok("(distinct 1 2 1)") == Value::of_bool(false));
  CHECK(eval_err("(= 1 true)").find("sort clash") != std::string::npos);
  CHECK(eval_err("(ite 1 2 3)").find("condition") != std::string::npos);
  CHECK(eval_err("q").find("unbound name") != std::string::npos);
}

TEST_CASE("bitvector semantics wrap to the declared width") {
  CHECK(eval_ok("(bvadd (_ bv255 8) (_ bv1 8))") == Value::of_bitvec(8, 0));
  CHECK(eval_ok("(bvsub (_ bv0 8) (_ bv1 8))") == Value::of_bitvec(8, 255));
  CHECK(eval_ok("(bvmul (_ bv16 8) (_ bv16 8))") == Value::of_bitvec(8, 0));
  CHECK(eval_ok("(bvudiv (_ bv5 8) (_ bv0 8))") == Value::of_bitvec(8, 255));
  CHECK(eval_ok("(bvurem (_ bv5 8) (_ bv0 8))") == Value::of_bitvec(8, 5));
  CHECK(eval_ok("(bvnot (_ bv0 4))") == Value::of_bitvec(4, 15));
  CHECK(eval_ok("(bvneg (_ bv1 4))") == Value::of_bitvec(4, 15));
  CHECK(eval_ok("(bvshl (_ bv1 8) (_ bv9 8))") == Value::of_bitvec(8, 0));
  CHECK(eval_ok("(bvlshr (_ bv128 8) (_ bv7 8))") == Value::of_bitvec(8, 1));
  CHECK(eval_ok("(bvult (_ bv3 8) (_ bv4 8))") == Value::of_bool(true));
  CHECK(eval_ok("#xff") == Value::of_bitvec(8, 255));
  CHECK(eval_ok("#b1010") == Value::of_bitvec(4, 10));
  CHECK(eval_ok("(concat (_ bv1 4) (_ bv2 4))") == Value::of_bitvec(8, 0x12));
  CHECK(eval_ok("((_ extract 3 0) (_ bv18 8))") == Value::of_bitvec(4, 2));
  CHECK(eval_ok("((_ extract 7 4) (_ bv18 8))") == Value::of_bitvec(4, 1));
  CHECK(eval_ok("((_ zero_extend 4) (_ bv9 4))") == Value::of_bitvec(8, 9));
  CHECK(eval_ok("((_ sign_extend 4) (_ bv9 4))") == Value::of_bitvec(8, 0xf9));
  CHECK(eval_err("(bvadd (_ bv1 8) (_ bv1 4))").find("equal width") != std::string::npos);
  CHECK(eval_err("(str.len \"ab\")").find("external solver") != std::string::npos);
}

TEST_CASE("defined functions apply eagerly with a depth cap") {
  CandidateDefs d = defs_of(
      "(define-fun double ((x Int)) Int (+ x x))\n"
      "(define-fun quad ((x Int)) Int (double (double x)))");
  CHECK(eval_ok("(quad 10)", {}, d) == Value::of_int(40));
  CHECK(eval_ok("(double 21)", {}, d) == Value::of_int(42));

  CandidateDefs zero = defs_of("(define-fun k () Int 7)");
  CHECK(eval_ok("(+ (k) 1)", {}, zero) == Value::of_int(8));
  CHECK(eval_ok("(+ k 1)", {}, zero) == Value::of_int(8));

  CandidateDefs rec = defs_of("(define-fun f ((x Int)) Int (f x))");
  CHECK(eval_err("(f 1)", {}, rec).find("call depth") != std::string::npos);
}

TEST_CASE("correct candidate yields no counterexample") {
  SygusProblem p = mi_problem();
  auto r = find_counterexample(p, defs_of(kMiSolution));
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  CHECK_FALSE(r.value().has_value());
}

TEST_CASE("swapped candidate is refuted at the scan origin") {
  SygusProblem p = mi_problem();
  auto r = find_counterexample(p, defs_of(kMiSwapped));
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  REQUIRE(r.value().has_value());
  const Counterexample& ce = *r.value();
  // Exhaustive scan runs in declaration order, last variable fastest,
  // values ascending from the lower bound.
  CHECK(ce.assignment.at("x") == Value::of_int(-32));
  CHECK(ce.assignment.at("y") == Value::of_int(-31));
  CHECK(ce.failed_constraint == 1);
  // The witness really falsifies the reported constraint.
  auto v = eval_term(p.constraints[ce.failed_constraint], ce.assignment, defs_of(kMiSwapped));
  REQUIRE_MESSAGE(v.is_ok(), v.error());
  CHECK(v.value() == Value::of_bool(false));
}

TEST_CASE("boolean and bitvector domains are scanned ascending") {
  auto p = parse_sygus(
      "(synth-fun f ((v Bool)) Bool)\n(declare-var v Bool)\n"
      "(constraint (f v))\n(check-synth)\n");
  REQUIRE_MESSAGE(p.is_ok(), p.error());
  auto r = find_counterexample(p.value(), defs_of("(define-fun f ((v Bool)) Bool v)"));
  REQUIRE_MESSAGE(r.is_ok(), r.error());
  REQUIRE(r.value().has_value());
  CHECK(r.value()->assignment.at("v") == Value::of_bool(false));

  auto q = parse_sygus(
      "(synth-fun g ((w (_ BitVec 8))) Bool)\n(declare-var w (_ BitVec 8))\n"
      "(constraint (g w))\n(check-synth)\n");
  REQUIRE_MESSAGE(q.is_ok(), q.error());
  auto s = find_counterexample(
      q.value(), defs_of("(define-fun g ((w (_ BitVec 8))) Bool (bvult w (_ bv200 8)))"));
  REQUIRE_MESSAGE(s.is_ok(), s.error());
  REQUIRE(s.value().has_value());
  CHECK(s.value()->assignment.at("w") == Value::of_bitvec(8, 200));
}

TEST_CASE("a problem with no declared variables is checked once") {
  auto p = parse_sygus(
      "(synth-fun f () Int ((S Int)) ((S Int (0 1 2 3 4))))\n"
      "(constraint (= (f) 3))\n(check-synth)\n");
  REQUIRE_MESSAGE(p.is_ok(), p.error());
  auto wrong = find_counterexample(p.value(), defs_of("(define-fun f () Int 2)"));
  REQUIRE_MESSAGE(wrong.is_ok(), wrong.error());
  REQUIRE(wrong.value().has_value());
  CHECK(wrong.value()->assignment.empty());
  CHECK(wrong.value()->failed_constraint == 0);
  auto right = find_counterexample(p.value(), defs_of("(define-fun f () Int 3)"));
  REQUIRE_MESSAGE(right.is_ok(), right.error());
  CHECK_FALSE(right.value().has_value());
}

TEST_CASE("large domains fall back to seeded deterministic sampling") {
  // Four Int variables at bound 32 make 65^4 > 10^6 assignments.
  auto p = parse_sygus(
      "(synth-fun f ((a Int) (b Int) (c Int) (d Int)) Int)\n"
      "(declare-var a Int)\n(declare-var b Int)\n(declare-var c Int)\n(declare-var d Int)\n"
      "(constraint (= (f a b c d) (+ a b c d)))\n(check-synth)\n");
  REQUIRE_MESSAGE(p.is_ok(), p.error());
  CandidateDefs bad =
      defs_of("(define-fun f ((a Int) (b Int) (c Int) (d Int)) Int (+ a b c))");
  SearchSettings s;
  s.seed = 99;
  auto r1 = find_counterexample(p.value(), bad, s);
  auto r2 = find_counterexample(p.value(), bad, s);
  REQUIRE_MESSAGE(r1.is_ok(), r1.error());
  REQUIRE_MESSAGE(r2.is_ok(), r2.error());
  REQUIRE(r1.value().has_value());
  REQUIRE(r2.value().has_value());
  CHECK(r1.value()->assignment == r2.value()->assignment);
  CHECK(r1.value()->failed_constraint == r2.value()->failed_constraint);

  CandidateDefs good =
      defs_of("(define-fun f ((a Int) (b Int) (c Int) (d Int)) Int (+ a b c d))");
  auto ok = find_counterexample(p.value(), good, s);
  REQUIRE_MESSAGE(ok.is_ok(), ok.error());
  CHECK_FALSE(ok.value().has_value());
}

TEST_CASE("unsupported sorts are routed to the external solver path") {
  auto p = parse_sygus(
      "(synth-fun f ((s String)) String)\n(declare-var s String)\n"
      "(constraint (= (f s) s))\n(check-synth)\n");
  REQUIRE_MESSAGE(p.is_ok(), p.error());
  auto r = find_counterexample(p.value(), defs_of("(define-fun f ((s String)) String s)"));
  REQUIRE_FALSE(r.is_ok());
  CHECK(r.error().find("unsupported sort") != std::string::npos);
}

TEST_CASE("refutation query lists definitions, constants, negated constraints") {
  SygusProblem p = mi_problem();
  std::string q = emit_smt_query(p, defs_of(kMiSolution));
  CHECK(q ==
        "(set-logic LIA)\n"
        "(define-fun mi ((x Int) (y Int)) Int (ite (<= x y) x y))\n"
        "(declare-const x Int)\n"
        "(declare-const y Int)\n"
        "(assert (not (and (=> (>= x y) (= (mi x y) y)) (=> (>= y x) (= (mi x y) x)))))\n"
        "(check-sat)\n");

  auto single = parse_sygus(
      "(synth-fun f ((x Int)) Int)\n(declare-var x Int)\n"
      "(constraint (= (f x) (div x 2)))\n(check-synth)\n");
  REQUIRE_MESSAGE(single.is_ok(), single.error());
  std::string qs = emit_smt_query(single.value(), defs_of("(define-fun f ((x Int)) Int x)"));
  CHECK(qs.find("(assert (not (= (f x) (div x 2))))") != std::string::npos);
  CHECK(qs.find("; internal evaluator totalizes") != std::string::npos);

  auto none = parse_sygus("(synth-fun f () Int)\n(check-synth)\n");
  REQUIRE_MESSAGE(none.is_ok(), none.error());
  std::string qn = emit_smt_query(none.value(), defs_of("(define-fun f () Int 0)"));
  CHECK(qn.find("(assert (not true))") != std::string::npos);
}

TEST_CASE("value printing") {
  CHECK(Value::of_bool(true).to_string() == "true");
  CHECK(Value::of_int(-3).to_string() == "-3");
  CHECK(Value::of_bitvec(8, 5).to_string() == "(_ bv5 8)");
  CHECK(Value::of_bitvec(4, 255).bits == 15);  // masked on construction
  CHECK_FALSE(Value::of_int(1) == Value::of_bool(true));
  CHECK_FALSE(Value::of_bitvec(4, 1) == Value::of_bitvec(8, 1));
}
