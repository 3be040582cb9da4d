#include "veriloop/grammar.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace veriloop {

namespace {
constexpr int kInf = std::numeric_limits<int>::max() / 4;
}

bool Grammar::is_nonterminal(const std::string& name) const {
  return std::find(nonterminals.begin(), nonterminals.end(), name) != nonterminals.end();
}

Result<Grammar> validate_grammar(Grammar g) {
  std::set<std::string> seen;
  for (const auto& nt : g.nonterminals) {
    if (!seen.insert(nt).second)
      return Result<Grammar>::fail("duplicate nonterminal: " + nt);
  }
  if (!seen.count(g.start))
    return Result<Grammar>::fail("start symbol is not a declared nonterminal: " + g.start);
  for (const auto& [nt, rules] : g.productions) {
    (void)rules;
    if (!seen.count(nt))
      return Result<Grammar>::fail("productions for undeclared nonterminal: " + nt);
  }
  for (const auto& nt : g.nonterminals) {
    if (!g.productions.count(nt)) g.productions[nt] = {};
  }
  return Result<Grammar>::ok(std::move(g));
}

// ── Derivability ─────────────────────────────────────────────────────
//
// derive(nt, term) explores productions; an atom pattern naming a
// nonterminal is a unit step on the same term, a list pattern descends
// structurally. Unit cycles on a single term are cut with a banned set.
// Results computed with an empty banned set are exact and memoizable;
// under a nonempty banned set only positive answers are exact.

namespace {

struct DeriveCtx {
  const Grammar& g;
  bool use_memo;
  std::map<std::pair<std::string, const Term*>, bool> memo;
};

bool derive_nt(DeriveCtx& ctx, const std::string& nt, const Term& term,
               std::set<std::string>& banned);

bool match_pattern(DeriveCtx& ctx, const Term& pattern, const Term& term,
                   std::set<std::string>& banned) {
  if (pattern.is_atom()) {
    if (ctx.g.is_nonterminal(pattern.atom)) return derive_nt(ctx, pattern.atom, term, banned);
    return term.is_atom() && term.atom == pattern.atom;
  }
  if (!term.is_list() || term.children.size() != pattern.children.size()) return false;
  for (size_t i = 0; i < pattern.children.size(); ++i) {
    std::set<std::string> fresh;  // structural descent resets the unit chain
    if (!match_pattern(ctx, pattern.children[i], term.children[i], fresh)) return false;
  }
  return true;
}

bool derive_nt(DeriveCtx& ctx, const std::string& nt, const Term& term,
               std::set<std::string>& banned) {
  if (ctx.use_memo) {
    auto it = ctx.memo.find({nt, &term});
    if (it != ctx.memo.end()) return it->second;
  }
  if (banned.count(nt)) return false;
  const bool entry_clean = banned.empty();
  banned.insert(nt);
  bool ok = false;
  auto rules = ctx.g.productions.find(nt);
  if (rules != ctx.g.productions.end()) {
    for (const auto& pattern : rules->second) {
      if (match_pattern(ctx, pattern, term, banned)) {
        ok = true;
        break;
      }
    }
  }
  banned.erase(nt);
  if (ctx.use_memo && (ok || entry_clean)) ctx.memo[{nt, &term}] = ok;
  return ok;
}

}  // namespace

bool derives(const Grammar& g, const std::string& nt, const Term& term) {
  DeriveCtx ctx{g, true, {}};
  std::set<std::string> banned;
  return derive_nt(ctx, nt, term, banned);
}

bool derives_unmemoized(const Grammar& g, const std::string& nt, const Term& term) {
  DeriveCtx ctx{g, false, {}};
  std::set<std::string> banned;
  return derive_nt(ctx, nt, term, banned);
}

// ── Size bounds ──────────────────────────────────────────────────────

namespace {

int pattern_min(const Grammar& g, const Term& pattern, const std::map<std::string, int>& nt_min) {
  if (pattern.is_atom()) {
    if (g.is_nonterminal(pattern.atom)) return nt_min.at(pattern.atom);
    return 1;
  }
  long long total = 1;
  for (const auto& c : pattern.children) {
    total += pattern_min(g, c, nt_min);
    if (total >= kInf) return kInf;
  }
  return static_cast<int>(total);
}

std::map<std::string, int> nt_min_sizes(const Grammar& g) {
  std::map<std::string, int> m;
  for (const auto& nt : g.nonterminals) m[nt] = kInf;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& nt : g.nonterminals) {
      auto rules = g.productions.find(nt);
      if (rules == g.productions.end()) continue;
      for (const auto& p : rules->second) {
        int s = pattern_min(g, p, m);
        if (s < m[nt]) {
          m[nt] = s;
          changed = true;
        }
      }
    }
  }
  return m;
}

void collect_nts(const Grammar& g, const Term& pattern, std::set<std::string>& out) {
  if (pattern.is_atom()) {
    if (g.is_nonterminal(pattern.atom)) out.insert(pattern.atom);
    return;
  }
  for (const auto& c : pattern.children) collect_nts(g, c, out);
}

// A language is infinite iff some cycle of usable productions reachable from
// root contains a structural (size-growing) edge. Unit productions keep the
// term size unchanged, so cycles made of units alone stay finite.
bool has_growing_cycle(const Grammar& g, const std::string& root,
                       const std::map<std::string, int>& nt_min) {
  if (nt_min.at(root) >= kInf) return false;
  std::map<std::string, std::set<std::string>> unit_edges;
  std::map<std::string, std::set<std::string>> struct_edges;
  for (const auto& nt : g.nonterminals) {
    if (nt_min.at(nt) >= kInf) continue;
    auto rules = g.productions.find(nt);
    if (rules == g.productions.end()) continue;
    for (const auto& p : rules->second) {
      std::set<std::string> used;
      collect_nts(g, p, used);
      bool usable = true;
      for (const auto& u : used)
        if (nt_min.at(u) >= kInf) usable = false;
      if (!usable) continue;
      if (p.is_atom() && g.is_nonterminal(p.atom)) {
        unit_edges[nt].insert(p.atom);
      } else {
        struct_edges[nt].insert(used.begin(), used.end());
      }
    }
  }
  // Reachable set from root over both edge kinds.
  std::set<std::string> reach{root};
  std::vector<std::string> work{root};
  while (!work.empty()) {
    std::string n = work.back();
    work.pop_back();
    for (const auto* edges : {&unit_edges, &struct_edges}) {
      auto it = edges->find(n);
      if (it == edges->end()) continue;
      for (const auto& m : it->second)
        if (reach.insert(m).second) work.push_back(m);
    }
  }
  // A structural edge u->v grows the term; it lies on a cycle iff v can reach
  // u again over any edges.
  auto reaches = [&](const std::string& from, const std::string& to) {
    std::set<std::string> seen{from};
    std::vector<std::string> q{from};
    while (!q.empty()) {
      std::string n = q.back();
      q.pop_back();
      if (n == to) return true;
      for (const auto* edges : {&unit_edges, &struct_edges}) {
        auto it = edges->find(n);
        if (it == edges->end()) continue;
        for (const auto& m : it->second)
          if (seen.insert(m).second) q.push_back(m);
      }
    }
    return false;
  };
  for (const auto& [u, vs] : struct_edges) {
    if (!reach.count(u)) continue;
    for (const auto& v : vs)
      if (reaches(v, u)) return true;
  }
  return false;
}

int pattern_max(const Grammar& g, const Term& pattern, std::map<std::string, int>& nt_max,
                const std::map<std::string, int>& nt_min);

int nt_max_size(const Grammar& g, const std::string& nt, std::map<std::string, int>& nt_max,
                const std::map<std::string, int>& nt_min) {
  auto it = nt_max.find(nt);
  if (it != nt_max.end()) return it->second;
  nt_max[nt] = 0;  // placeholder; DAG by construction once cycles are ruled out
  int best = 0;
  auto rules = g.productions.find(nt);
  if (rules != g.productions.end()) {
    for (const auto& p : rules->second) {
      std::set<std::string> used;
      collect_nts(g, p, used);
      bool usable = true;
      for (const auto& u : used)
        if (nt_min.at(u) >= kInf) usable = false;
      if (!usable) continue;
      best = std::max(best, pattern_max(g, p, nt_max, nt_min));
    }
  }
  nt_max[nt] = best;
  return best;
}

int pattern_max(const Grammar& g, const Term& pattern, std::map<std::string, int>& nt_max,
                const std::map<std::string, int>& nt_min) {
  if (pattern.is_atom()) {
    if (g.is_nonterminal(pattern.atom)) return nt_max_size(g, pattern.atom, nt_max, nt_min);
    return 1;
  }
  long long total = 1;
  for (const auto& c : pattern.children) total += pattern_max(g, c, nt_max, nt_min);
  return static_cast<int>(std::min<long long>(total, kInf));
}

}  // namespace

std::optional<int> min_term_size(const Grammar& g, const std::string& nt) {
  auto m = nt_min_sizes(g);
  auto it = m.find(nt);
  if (it == m.end() || it->second >= kInf) return std::nullopt;
  return it->second;
}

std::optional<int> max_term_size(const Grammar& g, const std::string& nt) {
  auto nt_min = nt_min_sizes(g);
  auto it = nt_min.find(nt);
  if (it == nt_min.end() || it->second >= kInf) return 0;  // empty language
  if (has_growing_cycle(g, nt, nt_min)) return std::nullopt;
  std::map<std::string, int> nt_max;
  return nt_max_size(g, nt, nt_max, nt_min);
}

// ── Size-ordered enumeration ─────────────────────────────────────────

namespace {

struct EnumCtx {
  const Grammar& g;
  std::map<std::string, int> nt_min;
  std::map<std::pair<std::string, int>, std::vector<Term>> memo;
};

std::vector<Term> exact_nt(EnumCtx& ctx, const std::string& nt, int size,
                           std::set<std::string>& banned);

void inst_children(EnumCtx& ctx, const std::vector<Term>& children, size_t idx, int budget,
                   std::vector<Term>& partial, std::vector<Term>& out_terms);

// All instantiations of one pattern with exactly `size` nodes.
std::vector<Term> inst_pattern(EnumCtx& ctx, const Term& pattern, int size,
                               std::set<std::string>& banned) {
  if (pattern.is_atom()) {
    if (ctx.g.is_nonterminal(pattern.atom)) return exact_nt(ctx, pattern.atom, size, banned);
    if (size == 1) return {pattern};
    return {};
  }
  std::vector<Term> out;
  if (size < 1) return out;
  std::vector<Term> partial;
  inst_children(ctx, pattern.children, 0, size - 1, partial, out);
  return out;
}

void inst_children(EnumCtx& ctx, const std::vector<Term>& children, size_t idx, int budget,
                   std::vector<Term>& partial, std::vector<Term>& out_terms) {
  if (idx == children.size()) {
    if (budget == 0) out_terms.push_back(Term::make_list(partial));
    return;
  }
  int rest_min = 0;
  for (size_t j = idx + 1; j < children.size(); ++j) {
    rest_min += pattern_min(ctx.g, children[j], ctx.nt_min);
    if (rest_min >= kInf) return;
  }
  int own_min = pattern_min(ctx.g, children[idx], ctx.nt_min);
  if (own_min >= kInf) return;
  for (int s = own_min; s <= budget - rest_min; ++s) {
    std::set<std::string> fresh;
    auto terms = inst_pattern(ctx, children[idx], s, fresh);
    for (auto& t : terms) {
      partial.push_back(t);
      inst_children(ctx, children, idx + 1, budget - s, partial, out_terms);
      partial.pop_back();
    }
  }
}

std::vector<Term> exact_nt(EnumCtx& ctx, const std::string& nt, int size,
                           std::set<std::string>& banned) {
  if (banned.count(nt)) return {};
  const bool entry_clean = banned.empty();
  if (entry_clean) {
    auto it = ctx.memo.find({nt, size});
    if (it != ctx.memo.end()) return it->second;
  }
  banned.insert(nt);
  std::vector<Term> out;
  std::set<std::string> seen;
  auto rules = ctx.g.productions.find(nt);
  if (rules != ctx.g.productions.end()) {
    for (const auto& pattern : rules->second) {
      for (auto& t : inst_pattern(ctx, pattern, size, banned)) {
        if (seen.insert(print_term(t)).second) out.push_back(std::move(t));
      }
    }
  }
  banned.erase(nt);
  if (entry_clean) ctx.memo[{nt, size}] = out;
  return out;
}

}  // namespace

std::vector<Term> enumerate_terms(const Grammar& g, const std::string& nt, int max_size) {
  EnumCtx ctx{g, nt_min_sizes(g), {}};
  std::vector<Term> out;
  for (int s = 1; s <= max_size; ++s) {
    std::set<std::string> banned;
    auto terms = exact_nt(ctx, nt, s, banned);
    out.insert(out.end(), terms.begin(), terms.end());
  }
  return out;
}

// ── Token-sequence layer ─────────────────────────────────────────────

namespace {

std::vector<std::string> pattern_tokens(const Term& pattern) {
  if (pattern.is_atom()) return {pattern.atom};
  std::vector<std::string> out;
  out.reserve(pattern.children.size());
  for (const auto& c : pattern.children) out.push_back(c.atom);
  return out;
}

struct SeqCtx {
  const Grammar& g;
  const TokenSeq& tokens;
  std::map<std::tuple<std::string, size_t, size_t>, bool> memo;
};

bool derive_seq(SeqCtx& ctx, const std::string& nt, size_t lo, size_t hi,
                std::set<std::string>& banned);

bool match_seq(SeqCtx& ctx, const std::vector<std::string>& pat, size_t pi, size_t pos,
               size_t lo, size_t hi, std::set<std::string>& banned) {
  if (pi == pat.size()) return pos == hi;
  const std::string& tok = pat[pi];
  if (ctx.g.is_nonterminal(tok)) {
    for (size_t mid = pos + 1; mid <= hi; ++mid) {
      bool same_span = (pos == lo && mid == hi);
      if (same_span) {
        if (!derive_seq(ctx, tok, pos, mid, banned)) continue;
      } else {
        std::set<std::string> fresh;
        if (!derive_seq(ctx, tok, pos, mid, fresh)) continue;
      }
      if (match_seq(ctx, pat, pi + 1, mid, lo, hi, banned)) return true;
    }
    return false;
  }
  if (pos >= hi || ctx.tokens[pos] != tok) return false;
  return match_seq(ctx, pat, pi + 1, pos + 1, lo, hi, banned);
}

bool derive_seq(SeqCtx& ctx, const std::string& nt, size_t lo, size_t hi,
                std::set<std::string>& banned) {
  auto key = std::make_tuple(nt, lo, hi);
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;
  if (banned.count(nt)) return false;
  const bool entry_clean = banned.empty();
  banned.insert(nt);
  bool ok = false;
  auto rules = ctx.g.productions.find(nt);
  if (rules != ctx.g.productions.end()) {
    for (const auto& pattern : rules->second) {
      auto pat = pattern_tokens(pattern);
      if (match_seq(ctx, pat, 0, lo, lo, hi, banned)) {
        ok = true;
        break;
      }
    }
  }
  banned.erase(nt);
  if (ok || entry_clean) ctx.memo[key] = ok;
  return ok;
}

}  // namespace

Result<Grammar> validate_token_grammar(Grammar g) {
  auto base = validate_grammar(std::move(g));
  if (!base) return base;
  for (const auto& [nt, rules] : base.value().productions) {
    for (const auto& p : rules) {
      if (p.is_atom()) continue;
      for (const auto& c : p.children) {
        if (!c.is_atom())
          return Result<Grammar>::fail("token grammar production for " + nt +
                                       " must be a flat token sequence");
      }
    }
  }
  return base;
}

bool derives_tokens(const Grammar& g, const std::string& nt, const TokenSeq& tokens) {
  if (tokens.empty()) return false;
  SeqCtx ctx{g, tokens, {}};
  std::set<std::string> banned;
  return derive_seq(ctx, nt, 0, tokens.size(), banned);
}

namespace {

struct SeqEnumCtx {
  const Grammar& g;
  std::map<std::string, int> nt_min;  // min token length per nonterminal
  std::map<std::pair<std::string, int>, std::vector<TokenSeq>> memo;
};

int seq_pattern_min(const SeqEnumCtx& ctx, const std::vector<std::string>& pat) {
  long long total = 0;
  for (const auto& tok : pat) {
    if (ctx.g.is_nonterminal(tok)) {
      total += ctx.nt_min.count(tok) ? ctx.nt_min.at(tok) : kInf;
    } else {
      total += 1;
    }
    if (total >= kInf) return kInf;
  }
  return static_cast<int>(total);
}

std::vector<TokenSeq> exact_seq_nt(SeqEnumCtx& ctx, const std::string& nt, int len,
                                   std::set<std::string>& banned);

void seq_inst(SeqEnumCtx& ctx, const std::vector<std::string>& pat, size_t pi, int budget,
              std::set<std::string>& banned, TokenSeq& partial, std::vector<TokenSeq>& out) {
  if (pi == pat.size()) {
    if (budget == 0) out.push_back(partial);
    return;
  }
  const std::string& tok = pat[pi];
  int rest_min = 0;
  for (size_t j = pi + 1; j < pat.size(); ++j) {
    if (ctx.g.is_nonterminal(pat[j]))
      rest_min += ctx.nt_min.count(pat[j]) ? ctx.nt_min.at(pat[j]) : kInf;
    else
      rest_min += 1;
    if (rest_min >= kInf) return;
  }
  if (!ctx.g.is_nonterminal(tok)) {
    if (budget < 1 + rest_min) return;
    partial.push_back(tok);
    seq_inst(ctx, pat, pi + 1, budget - 1, banned, partial, out);
    partial.pop_back();
    return;
  }
  int own_min = ctx.nt_min.count(tok) ? ctx.nt_min.at(tok) : kInf;
  for (int s = own_min; s <= budget - rest_min; ++s) {
    std::vector<TokenSeq> subs;
    if (pi == 0 && pat.size() == 1 && s == budget) {
      subs = exact_seq_nt(ctx, tok, s, banned);  // unit production, same length
    } else {
      std::set<std::string> fresh;
      subs = exact_seq_nt(ctx, tok, s, fresh);
    }
    for (const auto& sub : subs) {
      size_t base = partial.size();
      partial.insert(partial.end(), sub.begin(), sub.end());
      seq_inst(ctx, pat, pi + 1, budget - s, banned, partial, out);
      partial.resize(base);
    }
  }
}

std::vector<TokenSeq> exact_seq_nt(SeqEnumCtx& ctx, const std::string& nt, int len,
                                   std::set<std::string>& banned) {
  if (banned.count(nt)) return {};
  const bool entry_clean = banned.empty();
  if (entry_clean) {
    auto it = ctx.memo.find({nt, len});
    if (it != ctx.memo.end()) return it->second;
  }
  banned.insert(nt);
  std::vector<TokenSeq> out;
  std::set<std::string> seen;
  auto rules = ctx.g.productions.find(nt);
  if (rules != ctx.g.productions.end()) {
    for (const auto& pattern : rules->second) {
      auto pat = pattern_tokens(pattern);
      TokenSeq partial;
      std::vector<TokenSeq> found;
      seq_inst(ctx, pat, 0, len, banned, partial, found);
      for (auto& seq : found) {
        std::string key;
        for (const auto& tok : seq) {
          key += tok;
          key += '\x1f';
        }
        if (seen.insert(key).second) out.push_back(std::move(seq));
      }
    }
  }
  banned.erase(nt);
  if (entry_clean) ctx.memo[{nt, len}] = out;
  return out;
}

std::map<std::string, int> seq_min_lengths(const Grammar& g) {
  std::map<std::string, int> m;
  for (const auto& nt : g.nonterminals) m[nt] = kInf;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& nt : g.nonterminals) {
      auto rules = g.productions.find(nt);
      if (rules == g.productions.end()) continue;
      for (const auto& p : rules->second) {
        auto pat = pattern_tokens(p);
        long long total = 0;
        for (const auto& tok : pat) {
          total += g.is_nonterminal(tok) ? m[tok] : 1;
          if (total >= kInf) break;
        }
        if (total < m[nt]) {
          m[nt] = static_cast<int>(total);
          changed = true;
        }
      }
    }
  }
  return m;
}

}  // namespace

std::vector<TokenSeq> enumerate_token_seqs(const Grammar& g, const std::string& nt, int max_len) {
  SeqEnumCtx ctx{g, seq_min_lengths(g), {}};
  std::vector<TokenSeq> out;
  for (int len = 1; len <= max_len; ++len) {
    std::set<std::string> banned;
    auto seqs = exact_seq_nt(ctx, nt, len, banned);
    out.insert(out.end(), seqs.begin(), seqs.end());
  }
  return out;
}

// ── Streaming enumerator ─────────────────────────────────────────────

struct GrammarEnumerator::Impl {
  Grammar grammar;
  std::string nt;
  EnumCtx ctx;
  std::optional<int> max_size;
  int size = 0;
  size_t index = 0;
  std::vector<Term> buffer;

  Impl(Grammar g, std::string n)
      : grammar(std::move(g)), nt(std::move(n)), ctx{grammar, nt_min_sizes(grammar), {}} {
    max_size = max_term_size(grammar, nt);
  }
};

GrammarEnumerator::GrammarEnumerator(Grammar g, std::string nt)
    : impl_(std::make_unique<Impl>(std::move(g), std::move(nt))) {}

GrammarEnumerator::~GrammarEnumerator() = default;
GrammarEnumerator::GrammarEnumerator(GrammarEnumerator&&) noexcept = default;
GrammarEnumerator& GrammarEnumerator::operator=(GrammarEnumerator&&) noexcept = default;

std::optional<Term> GrammarEnumerator::next() {
  Impl& s = *impl_;
  while (s.index >= s.buffer.size()) {
    ++s.size;
    if (s.max_size && s.size > *s.max_size) return std::nullopt;
    std::set<std::string> banned;
    s.buffer = exact_nt(s.ctx, s.nt, s.size, banned);
    s.index = 0;
  }
  return s.buffer[s.index++];
}

}  // namespace veriloop
