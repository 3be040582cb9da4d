#include "veriloop/postprocess.hpp"

#include <sstream>

#include "json.hpp"
#include "veriloop/sexpr.hpp"

namespace veriloop {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool is_fence(const std::string& line) { return trim(line).rfind("```", 0) == 0; }

}  // namespace

std::string first_fenced_block(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  size_t open = lines.size();
  for (size_t k = 0; k < lines.size(); ++k) {
    if (is_fence(lines[k])) {
      open = k;
      break;
    }
  }
  if (open == lines.size()) return text;
  std::string body;
  for (size_t k = open + 1; k < lines.size(); ++k) {
    if (is_fence(lines[k])) break;
    body += lines[k];
    body += "\n";
  }
  return body;
}

namespace {

Result<std::string> extract_aiger(const std::string& raw) {
  using R = Result<std::string>;
  std::vector<std::string> lines = split_lines(first_fenced_block(raw));
  size_t start = lines.size();
  for (size_t k = 0; k < lines.size(); ++k) {
    std::string t = trim(lines[k]);
    if (t.rfind("REALIZABLE", 0) == 0 || t.rfind("UNREALIZABLE", 0) == 0) {
      start = k;
      break;
    }
  }
  if (start == lines.size())
    return R::fail("no realizability header found in the response");
  std::string out;
  for (size_t k = start; k < lines.size(); ++k) {
    if (is_fence(lines[k])) break;
    out += trim(lines[k]);
    out += "\n";
  }
  return R::ok(std::move(out));
}

Result<std::string> extract_smv(const std::string& raw) {
  using R = Result<std::string>;
  std::string body = trim(first_fenced_block(raw));
  if (body.empty()) return R::fail("empty response");
  return R::ok(body + "\n");
}

Result<std::string> extract_sygus(const std::string& raw) {
  using R = Result<std::string>;
  std::string body = first_fenced_block(raw);
  auto forms = parse_sexprs(body);
  if (!forms && body != raw) forms = parse_sexprs(raw);
  if (!forms) return R::fail(forms.error());
  std::string out;
  for (const Term& t : forms.value()) {
    if (!t.is_list() || t.children.empty() || !t.children[0].is_atom() ||
        t.children[0].atom != "define-fun")
      continue;
    if (!out.empty()) out += "\n";
    out += print_term(t);
  }
  if (out.empty()) return R::fail("no define-fun found in the response");
  return R::ok(std::move(out));
}

Result<std::string> extract_json_object(const std::string& raw) {
  using R = Result<std::string>;
  auto try_parse = [](const std::string& text) -> std::optional<std::string> {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) return std::nullopt;
    return doc.dump();
  };
  if (auto direct = try_parse(trim(first_fenced_block(raw)))) return R::ok(*direct);
  if (auto whole = try_parse(trim(raw))) return R::ok(*whole);
  size_t open = raw.find('{');
  size_t close = raw.rfind('}');
  if (open != std::string::npos && close != std::string::npos && open < close)
    if (auto inner = try_parse(raw.substr(open, close - open + 1))) return R::ok(*inner);
  return R::fail("response is not a syntactically valid JSON object");
}

Result<std::string> extract_sexprs(const std::string& raw) {
  using R = Result<std::string>;
  std::string body = first_fenced_block(raw);
  auto forms = parse_sexprs(body);
  if (!forms && body != raw) forms = parse_sexprs(raw);
  if (!forms) return R::fail(forms.error());
  if (forms.value().empty()) return R::fail("no s-expressions found in the response");
  std::string out;
  for (const Term& t : forms.value()) {
    if (!out.empty()) out += "\n";
    out += print_term(t);
  }
  return R::ok(std::move(out));
}

}  // namespace

Result<std::string> postprocess(const std::string& raw_response, const Benchmark& benchmark) {
  switch (benchmark.domain) {
    case DomainKind::Reactive: {
      const auto* payload = std::get_if<ReactivePayload>(&benchmark.aux);
      ReactiveTarget target = payload ? payload->target : ReactiveTarget::Aiger;
      return target == ReactiveTarget::Aiger ? extract_aiger(raw_response)
                                             : extract_smv(raw_response);
    }
    case DomainKind::Sygus:
      return extract_sygus(raw_response);
    case DomainKind::TlaSketch:
      return extract_json_object(raw_response);
    case DomainKind::Acl2sSketch:
      return extract_sexprs(raw_response);
  }
  return Result<std::string>::fail("unknown domain");
}

}  // namespace veriloop
