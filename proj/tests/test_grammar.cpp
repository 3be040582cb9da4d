#include "doctest.h"

#include <random>
#include <set>

#include "test_util.hpp"
#include "veriloop/grammar.hpp"

using namespace veriloop;

namespace {

Grammar linear_grammar() {
  // S -> x | (f S)
  Grammar g;
  g.nonterminals = {"S"};
  g.start = "S";
  g.productions["S"] = {parse_sexpr("x").take(), parse_sexpr("(f S)").take()};
  return g;
}

Grammar mi_grammar() {
  // S -> (ite (<= I I) I I);  I -> x | y
  Grammar g;
  g.nonterminals = {"S", "I"};
  g.start = "S";
  g.productions["S"] = {parse_sexpr("(ite (<= I I) I I)").take()};
  g.productions["I"] = {parse_sexpr("x").take(), parse_sexpr("y").take()};
  return g;
}

std::vector<std::string> printed(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(print_term(t));
  return out;
}

}  // namespace

TEST_CASE("validate_grammar catches undeclared symbols") {
  Grammar g = linear_grammar();
  CHECK(validate_grammar(g).is_ok());

  Grammar bad = g;
  bad.start = "T";
  CHECK(!validate_grammar(bad).is_ok());

  Grammar dup = g;
  dup.nonterminals = {"S", "S"};
  CHECK(!validate_grammar(dup).is_ok());

  Grammar orphan = g;
  orphan.productions["Q"] = {parse_sexpr("x").take()};
  CHECK(!validate_grammar(orphan).is_ok());
}

TEST_CASE("derives on the linear grammar") {
  Grammar g = linear_grammar();
  CHECK(derives(g, "S", parse_sexpr("x").take()));
  CHECK(derives(g, "S", parse_sexpr("(f x)").take()));
  CHECK(derives(g, "S", parse_sexpr("(f (f (f x)))").take()));
  CHECK(!derives(g, "S", parse_sexpr("y").take()));
  CHECK(!derives(g, "S", parse_sexpr("(f y)").take()));
  CHECK(!derives(g, "S", parse_sexpr("(g x)").take()));
  CHECK(!derives(g, "S", parse_sexpr("(f x x)").take()));
}

TEST_CASE("derives on the min-function grammar") {
  Grammar g = mi_grammar();
  CHECK(derives(g, "S", parse_sexpr("(ite (<= x y) x y)").take()));
  CHECK(derives(g, "S", parse_sexpr("(ite (<= y y) y y)").take()));
  CHECK(!derives(g, "S", parse_sexpr("(+ x y)").take()));
  CHECK(!derives(g, "S", parse_sexpr("(- x y)").take()));
  CHECK(!derives(g, "S", parse_sexpr("(ite (< x y) x y)").take()));
  CHECK(derives(g, "I", parse_sexpr("x").take()));
  CHECK(!derives(g, "I", parse_sexpr("z").take()));
}

TEST_CASE("unit production chains and cycles") {
  // S -> I; I -> S | a   (cyclic unit chain, still decides membership)
  Grammar g;
  g.nonterminals = {"S", "I"};
  g.start = "S";
  g.productions["S"] = {parse_sexpr("I").take()};
  g.productions["I"] = {parse_sexpr("S").take(), parse_sexpr("a").take()};
  CHECK(derives(g, "S", parse_sexpr("a").take()));
  CHECK(derives(g, "I", parse_sexpr("a").take()));
  CHECK(!derives(g, "S", parse_sexpr("b").take()));

  // Unit cycle feeding a structural rule reached through the cycle.
  // X -> Y; Y -> X | Z; Z -> (f X)
  Grammar h;
  h.nonterminals = {"X", "Y", "Z"};
  h.start = "X";
  h.productions["X"] = {parse_sexpr("Y").take()};
  h.productions["Y"] = {parse_sexpr("X").take(), parse_sexpr("Z").take()};
  h.productions["Z"] = {parse_sexpr("(f X)").take()};
  Term fa = parse_sexpr("(f (f a))").take();
  CHECK(!derives(h, "X", fa));  // leaves can never be produced
  Grammar h2 = h;
  h2.productions["Z"].push_back(parse_sexpr("a").take());
  CHECK(derives(h2, "X", parse_sexpr("(f (f a))").take()));
  CHECK(derives(h2, "Y", parse_sexpr("(f a)").take()));
  // Memoized queries in both orders agree with the unmemoized reference.
  for (const char* s : {"a", "(f a)", "(f (f a))", "(f b)", "b"}) {
    Term t = parse_sexpr(s).take();
    for (const auto& nt : h2.nonterminals) {
      CHECK(derives(h2, nt, t) == derives_unmemoized(h2, nt, t));
    }
  }
}

TEST_CASE("enumerate on the linear grammar is size-ordered") {
  Grammar g = linear_grammar();
  // node sizes: x=1, (f x)=3, (f (f x))=5
  auto terms = enumerate_terms(g, "S", 5);
  CHECK(printed(terms) == std::vector<std::string>{"x", "(f x)", "(f (f x))"});
  CHECK(enumerate_terms(g, "S", 4).size() == 2);
  CHECK(enumerate_terms(g, "S", 0).empty());
  CHECK(min_term_size(g, "S") == 1);
  CHECK(!max_term_size(g, "S").has_value());  // infinite language
}

TEST_CASE("enumerate respects production order within one size") {
  Grammar g;
  g.nonterminals = {"S"};
  g.start = "S";
  g.productions["S"] = {parse_sexpr("y").take(), parse_sexpr("x").take(),
                        parse_sexpr("y").take()};
  auto terms = enumerate_terms(g, "S", 1);
  CHECK(printed(terms) == std::vector<std::string>{"y", "x"});  // deduped, order kept
}

TEST_CASE("enumerate on the min-function grammar") {
  Grammar g = mi_grammar();
  CHECK(printed(enumerate_terms(g, "I", 1)) == std::vector<std::string>{"x", "y"});
  CHECK(enumerate_terms(g, "S", 7).empty());  // bodies have 8 nodes
  auto all = enumerate_terms(g, "S", 8);
  CHECK(all.size() == 16);
  CHECK(print_term(all.front()) == "(ite (<= x x) x x)");
  auto texts = printed(all);
  std::set<std::string> s(texts.begin(), texts.end());
  CHECK(s.count("(ite (<= x y) x y)") == 1);
  CHECK(s.size() == 16);
  CHECK(min_term_size(g, "S") == 8);
  CHECK(max_term_size(g, "S") == 8);
}

TEST_CASE("empty and finite languages") {
  Grammar g;
  g.nonterminals = {"S"};
  g.start = "S";
  g.productions["S"] = {parse_sexpr("(f S)").take()};  // no base case
  CHECK(enumerate_terms(g, "S", 10).empty());
  CHECK(!min_term_size(g, "S").has_value());
  CHECK(max_term_size(g, "S") == 0);

  Grammar fin;
  fin.nonterminals = {"S", "T"};
  fin.start = "S";
  fin.productions["S"] = {parse_sexpr("(f T T)").take(), parse_sexpr("T").take()};
  fin.productions["T"] = {parse_sexpr("a").take(), parse_sexpr("(g b)").take()};
  // max: (f (g b) (g b)) = 1+1+3+3 = 8
  CHECK(max_term_size(fin, "S") == 8);
  auto all = enumerate_terms(fin, "S", 8);
  CHECK(all.size() == 2 + 4);  // a, (g b), and four (f _ _)
}

TEST_CASE("streaming enumerator matches batch enumeration and exhausts") {
  Grammar g = linear_grammar();
  GrammarEnumerator en(g, "S");
  auto batch = enumerate_terms(g, "S", 9);
  for (const auto& expect : batch) {
    auto got = en.next();
    REQUIRE(got.has_value());
    CHECK(print_term(*got) == print_term(expect));
  }

  Grammar fin;
  fin.nonterminals = {"S"};
  fin.start = "S";
  fin.productions["S"] = {parse_sexpr("a").take(), parse_sexpr("(f a)").take()};
  GrammarEnumerator fe(fin, "S");
  CHECK(print_term(*fe.next()) == "a");
  CHECK(print_term(*fe.next()) == "(f a)");
  CHECK(!fe.next().has_value());
  CHECK(!fe.next().has_value());  // stays exhausted
}

TEST_CASE("streaming enumerator never repeats") {
  std::mt19937 rng(7);
  for (int round = 0; round < 30; ++round) {
    Grammar g = testutil::random_grammar(rng);
    GrammarEnumerator en(g, g.start);
    std::set<std::string> seen;
    for (int i = 0; i < 60; ++i) {
      auto t = en.next();
      if (!t) break;
      CHECK(seen.insert(print_term(*t)).second);
    }
  }
}

TEST_CASE("derives and enumerate agree on random grammars") {
  std::mt19937 rng(20240817);
  for (int round = 0; round < 10; ++round) {
    Grammar g = testutil::random_grammar(rng);
    for (const auto& nt : g.nonterminals) {
      auto terms = enumerate_terms(g, nt, 5);
      auto texts = printed(terms);
      std::set<std::string> lang(texts.begin(), texts.end());
      int last = 0;
      for (const auto& t : terms) {
        CHECK(derives(g, nt, t));
        CHECK(derives_unmemoized(g, nt, t));
        int s = term_size(t);
        CHECK(s <= 5);
        CHECK(s >= last);
        last = s;
      }
      int mutants = 0;
      for (size_t i = 0; i < terms.size() && mutants < 30; ++i) {
        Term m = testutil::mutate_term(rng, terms[i]);
        if (term_size(m) > 5) continue;
        ++mutants;
        CHECK(derives(g, nt, m) == (lang.count(print_term(m)) == 1));
      }
    }
  }
}

// ── Token-sequence layer ─────────────────────────────────────────────

namespace {

Grammar assign_token_grammar() {
  // A -> x' = B ;  B -> x + 1 | 0 | B + B
  Grammar g;
  g.nonterminals = {"A", "B"};
  g.start = "A";
  g.productions["A"] = {parse_sexpr("(x' = B)").take()};
  g.productions["B"] = {parse_sexpr("(x + 1)").take(), parse_sexpr("0").take(),
                        parse_sexpr("(B + B)").take()};
  return g;
}

}  // namespace

TEST_CASE("token grammar validation") {
  CHECK(validate_token_grammar(assign_token_grammar()).is_ok());
  Grammar nested;
  nested.nonterminals = {"A"};
  nested.start = "A";
  nested.productions["A"] = {parse_sexpr("(x (y z))").take()};
  CHECK(!validate_token_grammar(nested).is_ok());
}

TEST_CASE("token derivation matches subsequences") {
  Grammar g = assign_token_grammar();
  CHECK(derives_tokens(g, "A", {"x'", "=", "x", "+", "1"}));
  CHECK(derives_tokens(g, "A", {"x'", "=", "0"}));
  CHECK(derives_tokens(g, "A", {"x'", "=", "0", "+", "x", "+", "1"}));
  CHECK(!derives_tokens(g, "A", {"x'", "=", "(", "x", "+", "1", ")"}));
  CHECK(!derives_tokens(g, "A", {"x'", "=", "x"}));
  CHECK(!derives_tokens(g, "A", {"x'", "="}));
  CHECK(!derives_tokens(g, "A", {}));
  CHECK(derives_tokens(g, "B", {"0", "+", "0"}));
}

TEST_CASE("left-recursive token grammars terminate") {
  // E -> E + T | T ;  T -> a | b
  Grammar g;
  g.nonterminals = {"E", "T"};
  g.start = "E";
  g.productions["E"] = {parse_sexpr("(E + T)").take(), parse_sexpr("T").take()};
  g.productions["T"] = {parse_sexpr("a").take(), parse_sexpr("b").take()};
  CHECK(derives_tokens(g, "E", {"a"}));
  CHECK(derives_tokens(g, "E", {"a", "+", "b"}));
  CHECK(derives_tokens(g, "E", {"a", "+", "b", "+", "a"}));
  CHECK(!derives_tokens(g, "E", {"+", "a"}));
  CHECK(!derives_tokens(g, "E", {"a", "+"}));
  CHECK(!derives_tokens(g, "E", {"a", "b"}));
}

TEST_CASE("token enumeration is length-ordered and agrees with derivation") {
  Grammar g = assign_token_grammar();
  auto seqs = enumerate_token_seqs(g, "A", 7);
  REQUIRE(!seqs.empty());
  size_t last = 0;
  std::set<std::string> seen;
  for (const auto& s : seqs) {
    CHECK(s.size() >= last);
    last = s.size();
    CHECK(derives_tokens(g, "A", s));
    std::string key;
    for (const auto& tok : s) key += tok + " ";
    CHECK(seen.insert(key).second);
  }
  // shortest: x' = 0
  CHECK(seqs.front() == TokenSeq{"x'", "=", "0"});
}
