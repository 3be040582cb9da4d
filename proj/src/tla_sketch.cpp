#include "veriloop/tla_sketch.hpp"

#include <cctype>

#include "json.hpp"

namespace veriloop {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_single_token(char c) {
  return c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',' ||
         c == ';';
}

std::string join_tokens(const TokenSeq& tokens) {
  std::string out;
  for (size_t k = 0; k < tokens.size(); ++k) {
    if (k) out += ' ';
    out += tokens[k];
  }
  return out;
}

}  // namespace

TokenSeq tokenize_infix(const std::string& text) {
  TokenSeq out;
  size_t k = 0;
  while (k < text.size()) {
    char c = text[k];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      continue;
    }
    if (is_ident_char(c)) {
      size_t start = k;
      while (k < text.size() && is_ident_char(text[k])) ++k;
      while (k < text.size() && text[k] == '\'') ++k;  // primed name
      out.push_back(text.substr(start, k - start));
      continue;
    }
    if (is_single_token(c)) {
      out.push_back(std::string(1, c));
      ++k;
      continue;
    }
    if (c == '"') {
      size_t start = k++;
      while (k < text.size() && text[k] != '"') {
        if (text[k] == '\\' && k + 1 < text.size()) ++k;
        ++k;
      }
      if (k < text.size()) ++k;  // closing quote
      out.push_back(text.substr(start, k - start));
      continue;
    }
    size_t start = k;
    while (k < text.size() && !std::isspace(static_cast<unsigned char>(text[k])) &&
           !is_ident_char(text[k]) && !is_single_token(text[k]) && text[k] != '"')
      ++k;
    out.push_back(text.substr(start, k - start));
  }
  return out;
}

namespace {

Term pattern_term(const std::string& text) {
  TokenSeq tokens = tokenize_infix(text);
  if (tokens.size() == 1) return Term::make_atom(tokens[0]);
  std::vector<Term> atoms;
  atoms.reserve(tokens.size());
  for (const auto& t : tokens) atoms.push_back(Term::make_atom(t));
  return Term::make_list(std::move(atoms));
}

size_t count_occurrences(const std::string& text, const std::string& needle) {
  if (needle.empty()) return 0;
  size_t n = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

Result<Sketch> parse_sketch_bundle(const std::string& sketch_text,
                                   const std::string& sidecar_json) {
  using R = Result<Sketch>;
  ordered_json doc = ordered_json::parse(sidecar_json, nullptr, false);
  if (doc.is_discarded()) return R::fail("malformed sidecar JSON");
  if (!doc.is_object()) return R::fail("sidecar must be a JSON object");
  if (!doc.contains("holes") || !doc["holes"].is_array())
    return R::fail("sidecar needs a \"holes\" array");

  Sketch sketch;
  sketch.text = sketch_text;
  for (const auto& h : doc["holes"]) {
    if (!h.is_object() || !h.contains("id") || !h["id"].is_string() || !h.contains("marker") ||
        !h["marker"].is_string())
      return R::fail("each hole needs string \"id\" and \"marker\" fields");
    Hole hole;
    hole.hole_id = h["id"].get<std::string>();
    hole.marker = h["marker"].get<std::string>();
    if (h.contains("action")) hole.action_name = h["action"].get<std::string>();
    for (const auto& other : sketch.holes)
      if (other.hole_id == hole.hole_id)
        return R::fail("duplicate hole id: " + hole.hole_id);
    size_t n = count_occurrences(sketch_text, hole.marker);
    if (n != 1)
      return R::fail("marker " + hole.marker + " occurs " + std::to_string(n) +
                     " times in the sketch, expected exactly once");

    if (!h.contains("grammar") || !h["grammar"].is_object())
      return R::fail("hole " + hole.hole_id + " needs a \"grammar\" object");
    const auto& gj = h["grammar"];
    if (!gj.contains("start") || !gj["start"].is_string() || !gj.contains("rules") ||
        !gj["rules"].is_object())
      return R::fail("hole " + hole.hole_id + " grammar needs \"start\" and \"rules\"");
    Grammar g;
    g.start = gj["start"].get<std::string>();
    for (const auto& [nt, prods] : gj["rules"].items()) {
      g.nonterminals.push_back(nt);
      if (!prods.is_array())
        return R::fail("hole " + hole.hole_id + ": productions for " + nt + " must be an array");
      for (const auto& p : prods) {
        if (!p.is_string())
          return R::fail("hole " + hole.hole_id + ": productions must be strings");
        g.productions[nt].push_back(pattern_term(p.get<std::string>()));
      }
      if (!g.productions.count(nt)) g.productions[nt] = {};
    }
    auto validated = validate_token_grammar(std::move(g));
    if (!validated) return R::fail("hole " + hole.hole_id + ": " + validated.error());
    hole.grammar = validated.take();
    sketch.holes.push_back(std::move(hole));
  }

  if (doc.contains("properties")) {
    if (!doc["properties"].is_array()) return R::fail("\"properties\" must be an array");
    for (const auto& p : doc["properties"]) {
      if (!p.is_string()) return R::fail("properties must be strings");
      sketch.properties.push_back(p.get<std::string>());
    }
  }
  if (doc.contains("checker")) {
    const auto& c = doc["checker"];
    if (!c.is_object()) return R::fail("\"checker\" must be an object");
    if (c.contains("command")) sketch.checker.command = c["command"].get<std::string>();
    if (c.contains("working_dir")) sketch.checker.working_dir = c["working_dir"].get<std::string>();
    if (c.contains("workers")) sketch.checker.workers = c["workers"].get<int>();
  }
  return R::ok(std::move(sketch));
}

std::string HoleMapping::canonical_text() const {
  json obj = json::object();  // plain json sorts keys
  for (const auto& [id, tokens] : fills) obj[id] = join_tokens(tokens);
  return obj.dump();
}

Result<HoleMapping> parse_mapping(const std::string& json_text, const Sketch& sketch) {
  using R = Result<HoleMapping>;
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded()) return R::fail("malformed JSON");
  if (!doc.is_object()) return R::fail("mapping must be a JSON object");

  HoleMapping mapping;
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const auto& hole : sketch.holes) known = known || hole.hole_id == key;
    if (!known) return R::fail("key mismatch: unexpected key " + key);
    if (!value.is_string()) return R::fail("value for " + key + " must be a string");
    mapping.fills[key] = tokenize_infix(value.get<std::string>());
  }
  for (const auto& hole : sketch.holes)
    if (!mapping.fills.count(hole.hole_id))
      return R::fail("key mismatch: missing hole " + hole.hole_id);
  return R::ok(std::move(mapping));
}

Result<bool> check_mapping_grammar(const HoleMapping& mapping, const Sketch& sketch) {
  using R = Result<bool>;
  for (const auto& hole : sketch.holes) {
    auto it = mapping.fills.find(hole.hole_id);
    if (it == mapping.fills.end()) return R::fail("hole " + hole.hole_id + ": no fill");
    if (!derives_tokens(hole.grammar, hole.grammar.start, it->second))
      return R::fail("hole " + hole.hole_id + ": fill '" + join_tokens(it->second) +
                     "' is not derivable from its grammar");
  }
  return R::ok(true);
}

std::string substitute(const Sketch& sketch, const HoleMapping& mapping) {
  std::string out;
  size_t k = 0;
  while (k < sketch.text.size()) {
    bool replaced = false;
    for (const auto& hole : sketch.holes) {
      if (sketch.text.compare(k, hole.marker.size(), hole.marker) != 0) continue;
      auto it = mapping.fills.find(hole.hole_id);
      if (it == mapping.fills.end()) break;  // leave unknown markers in place
      out += join_tokens(it->second);
      k += hole.marker.size();
      replaced = true;
      break;
    }
    if (!replaced) out += sketch.text[k++];
  }
  return out;
}

Result<Verdict> verify_completed(const std::string& module_text,
                                 const std::vector<std::string>& properties,
                                 const Adapter& adapter, double deadline_secs) {
  using R = Result<Verdict>;
  AdapterRequest request;
  request.payload = module_text;
  request.args = properties;
  request.deadline_secs = deadline_secs;
  auto response = adapter(request);
  if (!response) return R::fail(response.error());
  switch (response.value().status) {
    case AdapterResponse::Status::Pass:
      return R::ok(Verdict::pass());
    case AdapterResponse::Status::Fail:
      return R::ok(Verdict::semantic_fail(response.value().detail));
    case AdapterResponse::Status::Timeout:
      return R::ok(Verdict::verify_timeout("external checker hit the deadline"));
  }
  return R::fail("unrecognized adapter status");
}

}  // namespace veriloop
