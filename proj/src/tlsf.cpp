#include "veriloop/tlsf.hpp"

#include <cctype>
#include <set>

namespace veriloop {

namespace {

void skip_space_and_comments(const std::string& s, size_t& i) {
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    } else if (s[i] == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else {
      return;
    }
  }
}

// Finds `keyword` at top level and returns the span inside its braces.
Result<std::string> block_body(const std::string& s, const std::string& keyword, size_t from = 0) {
  size_t i = from;
  while (true) {
    i = s.find(keyword, i);
    if (i == std::string::npos)
      return Result<std::string>::fail("missing " + keyword + " block");
    // require word boundary
    bool left_ok = i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1]));
    size_t after = i + keyword.size();
    bool right_ok = after >= s.size() || !std::isalnum(static_cast<unsigned char>(s[after]));
    if (left_ok && right_ok) break;
    i = after;
  }
  size_t j = i + keyword.size();
  skip_space_and_comments(s, j);
  if (j >= s.size() || s[j] != '{')
    return Result<std::string>::fail(keyword + " block has no '{'");
  int depth = 0;
  size_t start = j + 1;
  for (size_t k = j; k < s.size(); ++k) {
    if (s[k] == '{') ++depth;
    if (s[k] == '}') {
      --depth;
      if (depth == 0) return Result<std::string>::ok(s.substr(start, k - start));
    }
  }
  return Result<std::string>::fail(keyword + " block has no matching '}'");
}

std::string field_value(const std::string& body, const std::string& field) {
  size_t i = body.find(field);
  if (i == std::string::npos) return "";
  i += field.size();
  skip_space_and_comments(body, i);
  if (i < body.size() && body[i] == ':') ++i;
  skip_space_and_comments(body, i);
  if (i < body.size() && body[i] == '"') {
    size_t end = body.find('"', i + 1);
    if (end == std::string::npos) return "";
    return body.substr(i + 1, end - i - 1);
  }
  size_t start = i;
  while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i])) && body[i] != ';')
    ++i;
  return body.substr(start, i - start);
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits a block body on ';', dropping comments and blank items.
std::vector<std::string> split_items(const std::string& body) {
  std::vector<std::string> items;
  std::string cur;
  for (size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '/' && i + 1 < body.size() && body[i + 1] == '/') {
      while (i < body.size() && body[i] != '\n') ++i;
      continue;
    }
    if (body[i] == ';') {
      std::string t = trim(cur);
      if (!t.empty()) items.push_back(t);
      cur.clear();
      continue;
    }
    cur += body[i];
  }
  std::string t = trim(cur);
  if (!t.empty()) items.push_back(t);
  return items;
}

bool valid_signal_name(const std::string& s) {
  if (s.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

Result<TlsfInterface> parse_tlsf(const std::string& text) {
  TlsfInterface out;

  auto info = block_body(text, "INFO");
  if (!info) return Result<TlsfInterface>::fail(info.error());
  out.title = field_value(info.value(), "TITLE");
  out.description = field_value(info.value(), "DESCRIPTION");
  std::string sem = field_value(info.value(), "SEMANTICS");
  std::string tgt = field_value(info.value(), "TARGET");
  if (!sem.empty()) out.semantics = sem;
  if (!tgt.empty()) out.target = tgt;
  if (out.target != "Mealy" && out.target != "Moore")
    return Result<TlsfInterface>::fail("unsupported TARGET '" + out.target + "'");

  auto main_block = block_body(text, "MAIN");
  if (!main_block) return Result<TlsfInterface>::fail(main_block.error());
  const std::string& main_body = main_block.value();

  auto inputs = block_body(main_body, "INPUTS");
  if (!inputs) return Result<TlsfInterface>::fail(inputs.error());
  auto outputs = block_body(main_body, "OUTPUTS");
  if (!outputs) return Result<TlsfInterface>::fail(outputs.error());

  std::set<std::string> seen;
  for (const auto& item : split_items(inputs.value())) {
    if (!valid_signal_name(item))
      return Result<TlsfInterface>::fail("invalid input signal name: " + item);
    if (!seen.insert(item).second)
      return Result<TlsfInterface>::fail("duplicate signal name: " + item);
    out.inputs.push_back(item);
  }
  for (const auto& item : split_items(outputs.value())) {
    if (!valid_signal_name(item))
      return Result<TlsfInterface>::fail("invalid output signal name: " + item);
    if (!seen.insert(item).second)
      return Result<TlsfInterface>::fail("duplicate signal name: " + item);
    out.outputs.push_back(item);
  }
  if (out.inputs.empty() && out.outputs.empty())
    return Result<TlsfInterface>::fail("interface declares no signals");

  auto guarantees = block_body(main_body, "GUARANTEES");
  if (guarantees) out.guarantees = split_items(guarantees.value());
  auto assumptions = block_body(main_body, "ASSUMPTIONS");
  if (assumptions) out.assumptions = split_items(assumptions.value());

  return Result<TlsfInterface>::ok(std::move(out));
}

Result<std::vector<BoolExprPtr>> propositional_guarantees(const TlsfInterface& iface) {
  std::vector<BoolExprPtr> out;
  for (const auto& g : iface.guarantees) {
    std::string t = trim(g);
    if (t.size() < 2 || t[0] != 'G' ||
        (t[1] != '(' && !std::isspace(static_cast<unsigned char>(t[1]))))
      return Result<std::vector<BoolExprPtr>>::fail("guarantee is not of the form G(...): " + g);
    std::string inner = trim(t.substr(1));
    BoolParseOptions opts;
    opts.allow_c_operators = true;  // TLSF formulas use && and ||
    auto e = parse_bool_expr(inner, opts);
    if (!e)
      return Result<std::vector<BoolExprPtr>>::fail("guarantee body is not propositional: " +
                                                    e.error());
    out.push_back(e.take());
  }
  return Result<std::vector<BoolExprPtr>>::ok(std::move(out));
}

}  // namespace veriloop
