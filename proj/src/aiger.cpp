#include "veriloop/aiger.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace veriloop {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  lines.push_back(cur);
  return lines;
}

bool parse_u64(const std::string& tok, uint64_t& out) {
  if (tok.empty()) return false;
  out = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    out = out * 10 + static_cast<uint64_t>(c - '0');
  }
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

// Evaluation order for AND gates; fails on cyclic definitions.
Result<std::vector<size_t>> gate_order(const AigerCircuit& c) {
  uint64_t first_gate_var = c.num_inputs() + c.num_latches() + 1;
  auto gate_index = [&](uint64_t lit) -> long {
    uint64_t var = lit / 2;
    if (var < first_gate_var || var > c.max_var) return -1;
    return static_cast<long>(var - first_gate_var);
  };
  size_t n = c.and_gates.size();
  std::vector<int> state(n, 0);  // 0 new, 1 active, 2 done
  std::vector<size_t> order;
  order.reserve(n);
  bool cyclic = false;
  std::vector<std::pair<size_t, int>> stack;
  for (size_t root = 0; root < n && !cyclic; ++root) {
    if (state[root]) continue;
    stack.push_back({root, 0});
    state[root] = 1;
    while (!stack.empty()) {
      auto& [g, phase] = stack.back();
      uint64_t deps[2] = {c.and_gates[g].rhs0, c.and_gates[g].rhs1};
      if (phase < 2) {
        long d = gate_index(deps[phase]);
        ++phase;
        if (d >= 0) {
          if (state[d] == 1) {
            cyclic = true;
            break;
          }
          if (state[d] == 0) {
            state[d] = 1;
            stack.push_back({static_cast<size_t>(d), 0});
          }
        }
      } else {
        state[g] = 2;
        order.push_back(g);
        stack.pop_back();
      }
    }
  }
  if (cyclic) return Result<std::vector<size_t>>::fail("cyclic AND gate definition");
  return Result<std::vector<size_t>>::ok(std::move(order));
}

}  // namespace

Result<AigerCircuit> parse_aiger(const std::string& text) {
  using R = Result<AigerCircuit>;
  AigerCircuit c;
  std::vector<std::string> lines = split_lines(text);
  size_t ln = 0;
  auto next_line = [&]() -> const std::string* {
    while (ln < lines.size()) {
      const std::string& raw = lines[ln];
      if (!trim(raw).empty()) return &lines[ln];
      ++ln;
    }
    return nullptr;
  };

  const std::string* first = next_line();
  if (!first) return R::fail("empty file");
  if (trim(*first) == "REALIZABLE") {
    c.realizable = true;
    ++ln;
    first = next_line();
    if (!first) return R::fail("missing aag header after REALIZABLE");
  }

  auto header = split_ws(*first);
  ++ln;
  if (header.empty() || (header[0] != "aag" && header[0] != "aig"))
    return R::fail("missing aag header");
  if (header[0] == "aig") return R::fail("binary aig format not supported; use ASCII aag");
  if (header.size() != 6) return R::fail("wrong header counts: header must be 'aag M I L O A'");
  uint64_t m, i, l, o, a;
  if (!parse_u64(header[1], m) || !parse_u64(header[2], i) || !parse_u64(header[3], l) ||
      !parse_u64(header[4], o) || !parse_u64(header[5], a))
    return R::fail("wrong header counts: header fields must be integers");
  if (m != i + l + a)
    return R::fail("wrong header counts: M must equal I + L + A");
  c.max_var = m;
  uint64_t max_lit = 2 * m + 1;

  auto take_line = [&](const char* what) -> Result<std::vector<std::string>> {
    const std::string* line = next_line();
    if (!line)
      return Result<std::vector<std::string>>::fail(std::string("wrong header counts: missing ") +
                                                    what + " line");
    ++ln;
    return Result<std::vector<std::string>>::ok(split_ws(*line));
  };

  for (uint64_t k = 0; k < i; ++k) {
    auto toks = take_line("input");
    if (!toks) return R::fail(toks.error());
    uint64_t lit;
    if (toks.value().size() != 1 || !parse_u64(toks.value()[0], lit))
      return R::fail("input line must be a single literal");
    if (lit != 2 * (k + 1))
      return R::fail("inputs must use literals 2, 4, ... in order");
    c.input_literals.push_back(lit);
  }
  for (uint64_t k = 0; k < l; ++k) {
    auto toks = take_line("latch");
    if (!toks) return R::fail(toks.error());
    uint64_t cur, nxt;
    if (toks.value().size() != 2 || !parse_u64(toks.value()[0], cur) ||
        !parse_u64(toks.value()[1], nxt))
      return R::fail("latch line must be 'current next'");
    if (cur != 2 * (i + k + 1))
      return R::fail("latches must use the literals following the inputs, in order");
    if (nxt > max_lit) return R::fail("latch next literal exceeds M");
    c.latches.push_back({cur, nxt});
  }
  for (uint64_t k = 0; k < o; ++k) {
    auto toks = take_line("output");
    if (!toks) return R::fail(toks.error());
    uint64_t lit;
    if (toks.value().size() != 1 || !parse_u64(toks.value()[0], lit))
      return R::fail("output line must be a single literal");
    if (lit > max_lit) return R::fail("output literal exceeds M");
    c.output_literals.push_back(lit);
  }
  for (uint64_t k = 0; k < a; ++k) {
    auto toks = take_line("AND gate");
    if (!toks) return R::fail(toks.error());
    uint64_t lhs, rhs0, rhs1;
    if (toks.value().size() != 3 || !parse_u64(toks.value()[0], lhs) ||
        !parse_u64(toks.value()[1], rhs0) || !parse_u64(toks.value()[2], rhs1))
      return R::fail("AND gate line must be 'lhs rhs0 rhs1'");
    if (lhs % 2 != 0) return R::fail("odd literal for AND output; lhs must be even");
    if (lhs != 2 * (i + l + k + 1))
      return R::fail("AND gates must use the literals following the latches, in order");
    if (rhs0 > max_lit || rhs1 > max_lit) return R::fail("AND gate operand exceeds M");
    c.and_gates.push_back({lhs, rhs0, rhs1});
  }

  // Symbol table and comments.
  bool in_comments = false;
  std::set<std::string> seen_symbols;
  while (ln < lines.size()) {
    std::string line = lines[ln++];
    std::string t = trim(line);
    if (in_comments) {
      c.comments.push_back(line);
      continue;
    }
    if (t.empty()) continue;
    if (t == "c") {
      in_comments = true;
      continue;
    }
    size_t sp = t.find_first_of(" \t");
    std::string key = sp == std::string::npos ? t : t.substr(0, sp);
    std::string name = sp == std::string::npos ? "" : trim(t.substr(sp + 1));
    if (key.size() < 2 || (key[0] != 'i' && key[0] != 'l' && key[0] != 'o')) {
      if (split_ws(t).size() == 3)
        return R::fail("wrong header counts: more AND gate lines than the header declares");
      return R::fail("unrecognized line in symbol section: " + t);
    }
    uint64_t idx;
    if (!parse_u64(key.substr(1), idx))
      return R::fail("malformed symbol entry: " + t);
    uint64_t limit = key[0] == 'i' ? i : key[0] == 'l' ? l : o;
    if (idx >= limit) return R::fail("symbol index out of range: " + key);
    if (name.empty()) return R::fail("symbol entry has no name: " + t);
    if (!seen_symbols.insert(key).second) return R::fail("duplicate symbol entry: " + key);
    c.symbols[key] = name;
  }

  auto order = gate_order(c);
  if (!order) return R::fail(order.error());
  return R::ok(std::move(c));
}

Result<bool> validate_symbols(const AigerCircuit& circuit, const TlsfInterface& iface) {
  using R = Result<bool>;
  if (circuit.num_inputs() != iface.inputs.size())
    return R::fail("input count " + std::to_string(circuit.num_inputs()) +
                   " does not match the interface's " + std::to_string(iface.inputs.size()));
  if (circuit.num_outputs() != iface.outputs.size())
    return R::fail("output count " + std::to_string(circuit.num_outputs()) +
                   " does not match the interface's " + std::to_string(iface.outputs.size()));
  for (size_t k = 0; k < iface.inputs.size(); ++k) {
    std::string key = "i" + std::to_string(k);
    auto it = circuit.symbols.find(key);
    if (it == circuit.symbols.end()) return R::fail("missing symbol " + key);
    if (it->second != iface.inputs[k])
      return R::fail("symbol " + key + " is '" + it->second + "' but the interface says '" +
                     iface.inputs[k] + "'");
  }
  for (size_t k = 0; k < iface.outputs.size(); ++k) {
    std::string key = "o" + std::to_string(k);
    auto it = circuit.symbols.find(key);
    if (it == circuit.symbols.end()) return R::fail("missing symbol " + key);
    if (it->second != iface.outputs[k])
      return R::fail("symbol " + key + " is '" + it->second + "' but the interface says '" +
                     iface.outputs[k] + "'");
  }
  return R::ok(true);
}

Result<AigerEval> aiger_eval_step(const AigerCircuit& circuit, uint64_t latch_state,
                                  uint64_t input_bits) {
  using R = Result<AigerEval>;
  size_t I = circuit.num_inputs(), L = circuit.num_latches(), O = circuit.num_outputs();
  if (I > 64 || L > 64 || O > 64) return R::fail("circuit too wide for packed evaluation");
  auto order = gate_order(circuit);
  if (!order) return R::fail(order.error());

  std::vector<bool> val(circuit.max_var + 1, false);
  auto lit_val = [&](uint64_t lit) -> bool {
    if (lit == 0) return false;
    if (lit == 1) return true;
    return val[lit / 2] ^ (lit & 1);
  };
  for (size_t k = 0; k < I; ++k) val[k + 1] = (input_bits >> k) & 1;
  for (size_t k = 0; k < L; ++k) val[I + k + 1] = (latch_state >> k) & 1;
  for (size_t g : order.value()) {
    const auto& gate = circuit.and_gates[g];
    val[gate.lhs / 2] = lit_val(gate.rhs0) && lit_val(gate.rhs1);
  }
  AigerEval out;
  for (size_t k = 0; k < L; ++k)
    if (lit_val(circuit.latches[k].second)) out.next_state |= 1ull << k;
  for (size_t k = 0; k < O; ++k)
    if (lit_val(circuit.output_literals[k])) out.outputs |= 1ull << k;
  return R::ok(out);
}

Result<std::vector<AigerStep>> simulate_aiger(const AigerCircuit& circuit,
                                              const std::vector<std::vector<bool>>& inputs) {
  using R = Result<std::vector<AigerStep>>;
  size_t I = circuit.num_inputs(), L = circuit.num_latches();
  uint64_t latch_state = 0;
  std::vector<AigerStep> steps;
  steps.reserve(inputs.size());
  for (const auto& in : inputs) {
    if (in.size() != I)
      return R::fail("input vector size " + std::to_string(in.size()) + " does not match I=" +
                     std::to_string(I));
    uint64_t input_bits = 0;
    for (size_t k = 0; k < I; ++k)
      if (in[k]) input_bits |= 1ull << k;
    auto e = aiger_eval_step(circuit, latch_state, input_bits);
    if (!e) return R::fail(e.error());
    AigerStep step;
    for (size_t k = 0; k < L; ++k) step.latch_state.push_back((latch_state >> k) & 1);
    for (size_t k = 0; k < circuit.num_outputs(); ++k)
      step.outputs.push_back((e.value().outputs >> k) & 1);
    latch_state = e.value().next_state;
    steps.push_back(std::move(step));
  }
  return R::ok(std::move(steps));
}

}  // namespace veriloop
