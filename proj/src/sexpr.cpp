#include "veriloop/sexpr.hpp"

#include <cctype>
#include <sstream>

namespace veriloop {

int term_size(const Term& t) {
  if (t.is_atom()) return 1;
  int n = 1;
  for (const auto& c : t.children) n += term_size(c);
  return n;
}

int term_depth(const Term& t) {
  if (t.is_atom()) return 1;
  int d = 0;
  for (const auto& c : t.children) d = std::max(d, term_depth(c));
  return d + 1;
}

static void print_into(const Term& t, std::string& out) {
  if (t.is_atom()) {
    out += t.atom;
    return;
  }
  out += '(';
  for (size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ' ';
    print_into(t.children[i], out);
  }
  out += ')';
}

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

bool is_string_atom(const std::string& atom) {
  return atom.size() >= 2 && atom.front() == '"' && atom.back() == '"';
}

std::string string_atom_value(const std::string& atom) {
  if (!is_string_atom(atom)) return atom;
  std::string out;
  for (size_t i = 1; i + 1 < atom.size(); ++i) {
    if (atom[i] == '\\' && i + 2 < atom.size()) {
      ++i;
      switch (atom[i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: out += atom[i];
      }
    } else {
      out += atom[i];
    }
  }
  return out;
}

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;
  int line = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  void bump(char c) {
    if (c == '\n') ++line;
    ++pos;
  }

  void skip_blank() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ';') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump(c);
      } else {
        return;
      }
    }
  }

  bool at_end() {
    skip_blank();
    return pos >= text.size();
  }

  // Token kinds: "(", ")", or an atom lexeme.
  Result<std::string> next() {
    skip_blank();
    if (pos >= text.size())
      return Result<std::string>::fail("line " + std::to_string(line) + ": unexpected end of input");
    char c = text[pos];
    if (c == '(' || c == ')') {
      ++pos;
      return Result<std::string>::ok(std::string(1, c));
    }
    if (c == '"') {
      size_t start = pos;
      int start_line = line;
      bump(c);
      while (pos < text.size()) {
        char d = text[pos];
        if (d == '\\' && pos + 1 < text.size()) {
          bump(d);
          bump(text[pos]);
          continue;
        }
        bump(d);
        if (d == '"') return Result<std::string>::ok(text.substr(start, pos - start));
      }
      return Result<std::string>::fail("line " + std::to_string(start_line) + ": unterminated string literal");
    }
    size_t start = pos;
    while (pos < text.size()) {
      char d = text[pos];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '"') break;
      ++pos;
    }
    return Result<std::string>::ok(text.substr(start, pos - start));
  }
};

Result<Term> parse_one(Lexer& lx, int depth) {
  if (depth > 4096) return Result<Term>::fail("nesting too deep");
  auto tok = lx.next();
  if (!tok) return Result<Term>::fail(tok.error());
  const std::string& t = tok.value();
  if (t == ")")
    return Result<Term>::fail("line " + std::to_string(lx.line) + ": unbalanced ')'");
  if (t != "(") return Result<Term>::ok(Term::make_atom(t));

  std::vector<Term> children;
  while (true) {
    lx.skip_blank();
    if (lx.pos >= lx.text.size())
      return Result<Term>::fail("line " + std::to_string(lx.line) + ": unbalanced '(': missing ')'");
    if (lx.text[lx.pos] == ')') {
      ++lx.pos;
      return Result<Term>::ok(Term::make_list(std::move(children)));
    }
    auto child = parse_one(lx, depth + 1);
    if (!child) return child;
    children.push_back(child.take());
  }
}

}  // namespace

Result<Term> parse_sexpr(const std::string& text) {
  Lexer lx(text);
  auto t = parse_one(lx, 0);
  if (!t) return t;
  if (!lx.at_end())
    return Result<Term>::fail("line " + std::to_string(lx.line) + ": stray tokens after term");
  return t;
}

Result<std::vector<Term>> parse_sexprs(const std::string& text) {
  Lexer lx(text);
  std::vector<Term> out;
  while (!lx.at_end()) {
    auto t = parse_one(lx, 0);
    if (!t) return Result<std::vector<Term>>::fail(t.error());
    out.push_back(t.take());
  }
  return Result<std::vector<Term>>::ok(std::move(out));
}

}  // namespace veriloop
