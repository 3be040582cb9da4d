#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "veriloop/result.hpp"
#include "veriloop/sexpr.hpp"

namespace veriloop {

/// A production-rule grammar over s-expression terms.
/// Production right-hand sides are term patterns; any atom whose text equals
/// a declared nonterminal is a recursion point.
struct Grammar {
  std::vector<std::string> nonterminals;  // declaration order
  std::string start;
  std::map<std::string, std::vector<Term>> productions;

  bool is_nonterminal(const std::string& name) const;
};

/// Checks that start and all production keys name declared nonterminals and
/// that every nonterminal has a production list (possibly empty).
Result<Grammar> validate_grammar(Grammar g);

/// True iff `term` is derivable from `nt`. Total on all inputs.
bool derives(const Grammar& g, const std::string& nt, const Term& term);

/// Reference implementation without memoization; used to cross-check.
bool derives_unmemoized(const Grammar& g, const std::string& nt, const Term& term);

/// All derivable terms of node count <= max_size, in nondecreasing size and,
/// within one size, production-index-then-argument order. No duplicates.
std::vector<Term> enumerate_terms(const Grammar& g, const std::string& nt, int max_size);

/// Smallest derivable term size, or nullopt if the language is empty.
std::optional<int> min_term_size(const Grammar& g, const std::string& nt);

/// Largest derivable term size; nullopt when the language is infinite.
/// Returns 0 when the language is empty.
std::optional<int> max_term_size(const Grammar& g, const std::string& nt);

// ── Token-sequence layer ─────────────────────────────────────────────
// Reuses Grammar for flat token strings: each production pattern must be a
// single atom or a flat list of atoms. An atom naming a nonterminal derives
// a nonempty contiguous token subsequence.

using TokenSeq = std::vector<std::string>;

/// Validates that every production is a flat pattern of atoms.
Result<Grammar> validate_token_grammar(Grammar g);

/// True iff the token sequence is derivable from `nt`.
bool derives_tokens(const Grammar& g, const std::string& nt, const TokenSeq& tokens);

/// All derivable token sequences of length <= max_len, nondecreasing length.
std::vector<TokenSeq> enumerate_token_seqs(const Grammar& g, const std::string& nt, int max_len);

/// Streaming size-ordered enumeration over a grammar. Never repeats a term;
/// next() returns nullopt once a finite language is exhausted.
class GrammarEnumerator {
 public:
  GrammarEnumerator(Grammar g, std::string nt);
  ~GrammarEnumerator();
  GrammarEnumerator(GrammarEnumerator&&) noexcept;
  GrammarEnumerator& operator=(GrammarEnumerator&&) noexcept;

  std::optional<Term> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace veriloop
