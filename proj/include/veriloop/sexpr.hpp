#pragma once

#include <string>
#include <vector>

#include "veriloop/result.hpp"

namespace veriloop {

/// An s-expression term: an atom or a list of sub-terms.
/// Atoms hold lexemes; string literals keep their surrounding quotes so that
/// printing round-trips exactly.
struct Term {
  enum class Kind { Atom, List };

  Kind kind = Kind::Atom;
  std::string atom;
  std::vector<Term> children;

  static Term make_atom(std::string text) {
    Term t;
    t.kind = Kind::Atom;
    t.atom = std::move(text);
    return t;
  }

  static Term make_list(std::vector<Term> children) {
    Term t;
    t.kind = Kind::List;
    t.children = std::move(children);
    return t;
  }

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_list() const { return kind == Kind::List; }

  bool operator==(const Term& other) const {
    if (kind != other.kind) return false;
    return is_atom() ? atom == other.atom : children == other.children;
  }
};

/// Node count: an atom is one node, a list is one node plus its children.
int term_size(const Term& t);

/// Depth: an atom has depth 1.
int term_depth(const Term& t);

/// Canonical single-space rendering; reparse yields an equal term.
std::string print_term(const Term& t);

/// Parses exactly one term; trailing tokens are an error.
Result<Term> parse_sexpr(const std::string& text);

/// Parses zero or more top-level terms.
Result<std::vector<Term>> parse_sexprs(const std::string& text);

/// True if the atom text came from a double-quoted string literal.
bool is_string_atom(const std::string& atom);

/// Contents of a string-literal atom with quotes and escapes removed.
std::string string_atom_value(const std::string& atom);

}  // namespace veriloop
