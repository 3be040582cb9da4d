#include "veriloop/fsm.hpp"

#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace veriloop {

namespace {

struct PairHash {
  size_t operator()(const std::pair<uint64_t, uint64_t>& p) const {
    return std::hash<uint64_t>()(p.first * 0x9e3779b97f4a7c15ull ^ p.second);
  }
};

}  // namespace

RelationalFsm as_relational(const Fsm& fsm) {
  RelationalFsm r;
  r.input_names = fsm.input_names;
  r.state_names = fsm.state_names;
  r.init_states = {fsm.init_state};
  auto next = fsm.next;
  r.next = [next](uint64_t s, uint64_t u) { return std::vector<uint64_t>{next(s, u)}; };
  return r;
}

DeterminismResult check_determinism(const RelationalFsm& fsm, uint64_t state_cap) {
  DeterminismResult res;
  if (fsm.input_names.size() > kMaxEnumeratedInputBits) {
    res.status = CheckStatus::LimitExceeded;
    res.note = "too many input bits to enumerate: " + std::to_string(fsm.input_names.size());
    return res;
  }
  uint64_t num_inputs = 1ull << fsm.input_names.size();

  using P = std::pair<uint64_t, uint64_t>;
  std::unordered_map<P, std::pair<P, uint64_t>, PairHash> parent;  // child -> (parent, input)
  std::deque<P> queue;
  std::set<P> seen;

  auto build_trace = [&](P bad) {
    DivergenceTrace t;
    std::vector<P> chain{bad};
    std::vector<uint64_t> ins;
    P cur = bad;
    while (true) {
      auto it = parent.find(cur);
      if (it == parent.end()) break;
      ins.push_back(it->second.second);
      cur = it->second.first;
      chain.push_back(cur);
    }
    for (auto r = chain.rbegin(); r != chain.rend(); ++r) t.states.push_back(*r);
    for (auto r = ins.rbegin(); r != ins.rend(); ++r) t.inputs.push_back(*r);
    return t;
  };

  for (uint64_t a : fsm.init_states)
    for (uint64_t b : fsm.init_states) {
      P p{a, b};
      if (!seen.insert(p).second) continue;
      if (a != b) {
        res.status = CheckStatus::Violated;
        res.trace = build_trace(p);
        return res;
      }
      queue.push_back(p);
    }

  while (!queue.empty()) {
    P cur = queue.front();
    queue.pop_front();
    for (uint64_t u = 0; u < num_inputs; ++u) {
      std::vector<uint64_t> sa = fsm.next(cur.first, u);
      std::vector<uint64_t> sb = fsm.next(cur.second, u);
      for (uint64_t a : sa)
        for (uint64_t b : sb) {
          P nxt{a, b};
          if (seen.count(nxt)) continue;
          seen.insert(nxt);
          parent[nxt] = {cur, u};
          if (a != b) {
            res.status = CheckStatus::Violated;
            res.trace = build_trace(nxt);
            return res;
          }
          if (seen.size() > state_cap) {
            res.status = CheckStatus::LimitExceeded;
            res.note = "product state cap exceeded: " + std::to_string(state_cap);
            return res;
          }
          queue.push_back(nxt);
        }
    }
  }
  return res;
}

DeterminismResult check_determinism(const Fsm& fsm, uint64_t state_cap) {
  return check_determinism(as_relational(fsm), state_cap);
}

bool replay_divergence(const RelationalFsm& fsm, const DivergenceTrace& trace) {
  if (trace.states.size() != trace.inputs.size() + 1) return false;
  if (trace.states.empty()) return false;
  auto is_init = [&](uint64_t s) {
    for (uint64_t i : fsm.init_states)
      if (i == s) return true;
    return false;
  };
  if (!is_init(trace.states[0].first) || !is_init(trace.states[0].second)) return false;
  for (size_t k = 0; k < trace.inputs.size(); ++k) {
    auto succ_a = fsm.next(trace.states[k].first, trace.inputs[k]);
    auto succ_b = fsm.next(trace.states[k].second, trace.inputs[k]);
    auto has = [](const std::vector<uint64_t>& v, uint64_t x) {
      for (uint64_t s : v)
        if (s == x) return true;
      return false;
    };
    if (!has(succ_a, trace.states[k + 1].first)) return false;
    if (!has(succ_b, trace.states[k + 1].second)) return false;
  }
  return trace.states.back().first != trace.states.back().second;
}

namespace {

// Name resolution for invariant propositions: state, input, and output bits.
struct NameIndex {
  std::map<std::string, size_t> state_bit, input_bit, output_bit;

  explicit NameIndex(const Fsm& fsm) {
    for (size_t k = 0; k < fsm.state_names.size(); ++k) state_bit[fsm.state_names[k]] = k;
    for (size_t k = 0; k < fsm.input_names.size(); ++k) input_bit[fsm.input_names[k]] = k;
    for (size_t k = 0; k < fsm.output_names.size(); ++k) output_bit[fsm.output_names[k]] = k;
  }

  bool knows(const std::string& n) const {
    return state_bit.count(n) || input_bit.count(n) || output_bit.count(n);
  }
};

}  // namespace

Result<InvariantResult> check_invariant(const Fsm& fsm, const BoolExprPtr& prop,
                                        uint64_t state_cap) {
  using R = Result<InvariantResult>;
  NameIndex names(fsm);
  std::set<std::string> used;
  collect_bool_names(prop, used);
  for (const auto& n : used)
    if (!names.knows(n)) return R::fail("unknown name in invariant: " + n);

  InvariantResult res;
  if (fsm.input_names.size() > kMaxEnumeratedInputBits) {
    res.status = CheckStatus::LimitExceeded;
    res.note = "too many input bits to enumerate: " + std::to_string(fsm.input_names.size());
    return R::ok(std::move(res));
  }
  uint64_t num_inputs = 1ull << fsm.input_names.size();

  auto eval_at = [&](uint64_t s, uint64_t u) -> bool {
    uint64_t out = fsm.outputs ? fsm.outputs(s, u) : 0;
    auto lookup = [&](const std::string& n) -> std::optional<bool> {
      if (auto it = names.state_bit.find(n); it != names.state_bit.end())
        return (s >> it->second) & 1;
      if (auto it = names.input_bit.find(n); it != names.input_bit.end())
        return (u >> it->second) & 1;
      if (auto it = names.output_bit.find(n); it != names.output_bit.end())
        return (out >> it->second) & 1;
      return std::nullopt;
    };
    auto v = eval_bool_expr(prop, lookup);
    return v.is_ok() && v.value();
  };

  std::unordered_map<uint64_t, std::pair<uint64_t, uint64_t>> parent;  // child -> (parent, input)
  std::set<uint64_t> seen{fsm.init_state};
  std::deque<uint64_t> queue{fsm.init_state};

  auto build_trace = [&](uint64_t state, uint64_t bad_input) {
    ViolationTrace t;
    t.bad_input = bad_input;
    std::vector<uint64_t> chain{state};
    std::vector<uint64_t> ins;
    uint64_t cur = state;
    while (true) {
      auto it = parent.find(cur);
      if (it == parent.end()) break;
      ins.push_back(it->second.second);
      cur = it->second.first;
      chain.push_back(cur);
    }
    for (auto r = chain.rbegin(); r != chain.rend(); ++r) t.states.push_back(*r);
    for (auto r = ins.rbegin(); r != ins.rend(); ++r) t.inputs.push_back(*r);
    return t;
  };

  while (!queue.empty()) {
    uint64_t s = queue.front();
    queue.pop_front();
    for (uint64_t u = 0; u < num_inputs; ++u) {
      if (!eval_at(s, u)) {
        res.status = CheckStatus::Violated;
        res.trace = build_trace(s, u);
        return R::ok(std::move(res));
      }
      uint64_t nxt = fsm.next(s, u);
      if (seen.count(nxt)) continue;
      seen.insert(nxt);
      parent[nxt] = {s, u};
      if (seen.size() > state_cap) {
        res.status = CheckStatus::LimitExceeded;
        res.note = "state cap exceeded: " + std::to_string(state_cap);
        return R::ok(std::move(res));
      }
      queue.push_back(nxt);
    }
  }
  return R::ok(std::move(res));
}

Result<bool> replay_violation(const Fsm& fsm, const BoolExprPtr& prop,
                              const ViolationTrace& trace) {
  using R = Result<bool>;
  if (trace.states.size() != trace.inputs.size() + 1 || trace.states.empty())
    return R::fail("malformed trace");
  if (trace.states[0] != fsm.init_state) return R::fail("trace does not start at init");
  for (size_t k = 0; k < trace.inputs.size(); ++k)
    if (fsm.next(trace.states[k], trace.inputs[k]) != trace.states[k + 1])
      return R::fail("trace step " + std::to_string(k) + " is not a transition");

  NameIndex names(fsm);
  uint64_t s = trace.states.back(), u = trace.bad_input;
  uint64_t out = fsm.outputs ? fsm.outputs(s, u) : 0;
  auto lookup = [&](const std::string& n) -> std::optional<bool> {
    if (auto it = names.state_bit.find(n); it != names.state_bit.end()) return (s >> it->second) & 1;
    if (auto it = names.input_bit.find(n); it != names.input_bit.end()) return (u >> it->second) & 1;
    if (auto it = names.output_bit.find(n); it != names.output_bit.end())
      return (out >> it->second) & 1;
    return std::nullopt;
  };
  auto v = eval_bool_expr(prop, lookup);
  if (!v) return R::fail(v.error());
  return R::ok(!v.value());
}

Result<Fsm> smv_to_fsm(const SmvModule& module) {
  using R = Result<Fsm>;
  Fsm fsm;
  for (const auto& d : module.ivars) fsm.input_names.push_back(d.name);
  for (const auto& d : module.vars) {
    if (d.is_instance) return R::fail("module instances have no machine interpretation");
    fsm.state_names.push_back(d.name);
  }
  if (fsm.state_names.size() > 63) return R::fail("too many state variables");
  if (fsm.input_names.size() > 63) return R::fail("too many input variables");

  auto no_names = [](const std::string&) -> std::optional<bool> { return std::nullopt; };
  for (size_t k = 0; k < fsm.state_names.size(); ++k) {
    const BoolExprPtr* init = module.find_init(fsm.state_names[k]);
    if (!init) return R::fail("variable " + fsm.state_names[k] + " has no init() assignment");
    auto v = eval_bool_expr(*init, no_names);
    if (!v)
      return R::fail("init(" + fsm.state_names[k] + ") must be a closed boolean expression");
    if (v.value()) fsm.init_state |= 1ull << k;
  }

  // Shared evaluation context captured by the next/outputs closures.
  struct Ctx {
    std::map<std::string, size_t> input_bit, state_bit;
    std::vector<std::pair<std::string, BoolExprPtr>> defines;  // file order
    std::vector<BoolExprPtr> next_exprs;                       // by state bit

    // Defines evaluated in dependency order; file order works only when
    // references point backwards, so iterate to a fixpoint instead.
    std::map<std::string, bool> eval_defines(uint64_t s, uint64_t u) const {
      std::map<std::string, bool> vals;
      size_t remaining = defines.size();
      while (remaining > 0) {
        size_t before = remaining;
        for (const auto& [name, expr] : defines) {
          if (vals.count(name)) continue;
          auto v = eval_bool_expr(expr, [&](const std::string& n) -> std::optional<bool> {
            if (auto it = input_bit.find(n); it != input_bit.end()) return (u >> it->second) & 1;
            if (auto it = state_bit.find(n); it != state_bit.end()) return (s >> it->second) & 1;
            if (auto it = vals.find(n); it != vals.end()) return it->second;
            return std::nullopt;
          });
          if (v.is_ok()) {
            vals[name] = v.value();
            --remaining;
          }
        }
        if (remaining == before) break;  // unresolved references; parser flags these
      }
      return vals;
    }

    std::optional<bool> lookup(uint64_t s, uint64_t u, const std::map<std::string, bool>& defs,
                               const std::string& n) const {
      if (auto it = input_bit.find(n); it != input_bit.end()) return (u >> it->second) & 1;
      if (auto it = state_bit.find(n); it != state_bit.end()) return (s >> it->second) & 1;
      if (auto it = defs.find(n); it != defs.end()) return it->second;
      return std::nullopt;
    }
  };

  auto ctx = std::make_shared<Ctx>();
  for (size_t k = 0; k < fsm.input_names.size(); ++k) ctx->input_bit[fsm.input_names[k]] = k;
  for (size_t k = 0; k < fsm.state_names.size(); ++k) ctx->state_bit[fsm.state_names[k]] = k;
  ctx->defines = module.defines;
  for (const auto& name : fsm.state_names) {
    const BoolExprPtr* next = module.find_next(name);
    if (!next) return R::fail("variable " + name + " has no next() assignment");
    ctx->next_exprs.push_back(*next);
  }
  for (const auto& [n, e] : module.defines) {
    (void)e;
    fsm.output_names.push_back(n);
  }

  fsm.next = [ctx](uint64_t s, uint64_t u) -> uint64_t {
    auto defs = ctx->eval_defines(s, u);
    uint64_t out = 0;
    for (size_t k = 0; k < ctx->next_exprs.size(); ++k) {
      auto v = eval_bool_expr(ctx->next_exprs[k], [&](const std::string& n) {
        return ctx->lookup(s, u, defs, n);
      });
      if (v.is_ok() && v.value()) out |= 1ull << k;
    }
    return out;
  };
  fsm.outputs = [ctx](uint64_t s, uint64_t u) -> uint64_t {
    auto defs = ctx->eval_defines(s, u);
    uint64_t out = 0;
    size_t k = 0;
    for (const auto& [name, expr] : ctx->defines) {
      (void)expr;
      auto it = defs.find(name);
      if (it != defs.end() && it->second) out |= 1ull << k;
      ++k;
    }
    return out;
  };
  return R::ok(std::move(fsm));
}

Result<Fsm> aiger_to_fsm(const AigerCircuit& circuit) {
  using R = Result<Fsm>;
  if (circuit.num_inputs() > 63 || circuit.num_latches() > 63)
    return R::fail("circuit too wide for packed states");
  Fsm fsm;
  auto name_of = [&](char role, size_t idx) {
    std::string key = role + std::to_string(idx);
    auto it = circuit.symbols.find(key);
    return it != circuit.symbols.end() ? it->second : key;
  };
  for (size_t k = 0; k < circuit.num_inputs(); ++k) fsm.input_names.push_back(name_of('i', k));
  for (size_t k = 0; k < circuit.num_latches(); ++k) fsm.state_names.push_back(name_of('l', k));
  for (size_t k = 0; k < circuit.num_outputs(); ++k) fsm.output_names.push_back(name_of('o', k));
  fsm.init_state = 0;  // latches start at 0

  auto probe = aiger_eval_step(circuit, 0, 0);
  if (!probe) return R::fail(probe.error());

  auto c = std::make_shared<AigerCircuit>(circuit);
  fsm.next = [c](uint64_t s, uint64_t u) -> uint64_t {
    auto e = aiger_eval_step(*c, s, u);
    return e ? e.value().next_state : 0;
  };
  fsm.outputs = [c](uint64_t s, uint64_t u) -> uint64_t {
    auto e = aiger_eval_step(*c, s, u);
    return e ? e.value().outputs : 0;
  };
  return R::ok(std::move(fsm));
}

}  // namespace veriloop
