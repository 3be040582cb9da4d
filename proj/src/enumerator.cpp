#include "veriloop/enumerator.hpp"

#include <optional>
#include <variant>
#include <vector>

#include "json.hpp"

#include "veriloop/grammar.hpp"
#include "veriloop/tla_sketch.hpp"

namespace veriloop {

namespace {

std::string format_define_fun(const SynthFun& fun, const Term& body) {
  std::string out = "(define-fun " + fun.name + " (";
  for (size_t i = 0; i < fun.params.size(); ++i) {
    if (i) out += ' ';
    out += "(" + fun.params[i].first + " " + fun.params[i].second + ")";
  }
  out += ") " + fun.return_sort + " " + print_term(body) + ")";
  return out;
}

std::string joined(const TokenSeq& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

/// Per-hole token sequences grouped by exact length, grown on demand.
struct HoleBuckets {
  Grammar grammar;
  std::string start;
  std::vector<std::vector<TokenSeq>> by_len;  // index = length, [0] unused
  int computed_up_to = 0;

  void grow(int len) {
    if (len <= computed_up_to) return;
    by_len.assign(static_cast<size_t>(len) + 1, {});
    for (TokenSeq& seq : enumerate_token_seqs(grammar, start, len)) {
      by_len[seq.size()].push_back(std::move(seq));
    }
    computed_up_to = len;
  }

  int min_len(int cap) {
    grow(cap);
    for (int len = 1; len <= cap; ++len) {
      if (!by_len[len].empty()) return len;
    }
    return 0;  // empty language within the cap
  }
};

}  // namespace

struct EnumeratorGenerator::State {
  std::string build_error;

  // Function synthesis
  std::optional<GrammarEnumerator> stream;
  SynthFun fun;

  // Sketch holes
  std::vector<std::string> hole_ids;
  std::vector<HoleBuckets> buckets;
  std::vector<int> min_lens;
  int total_len = 0;
  std::vector<std::string> layer;  // candidates at the current total length
  size_t layer_pos = 0;
  int cap = 0;

  void init_sygus(const SygusProblem& problem) {
    if (problem.synth_funs.size() != 1) {
      build_error = "the enumerator supports exactly one synth-fun";
      return;
    }
    fun = problem.synth_funs[0];
    if (!fun.grammar) {
      build_error = "synth-fun " + fun.name + " has no grammar to enumerate";
      return;
    }
    stream.emplace(*fun.grammar, fun.grammar->start);
  }

  void init_sketch(const Sketch& sketch, int max_tokens) {
    cap = max_tokens;
    if (sketch.holes.empty()) {
      build_error = "sketch has no holes to enumerate";
      return;
    }
    int sum_min = 0;
    for (const Hole& hole : sketch.holes) {
      hole_ids.push_back(hole.hole_id);
      buckets.push_back({hole.grammar, hole.grammar.start, {}, 0});
      int m = buckets.back().min_len(cap);
      if (m == 0) {
        build_error = "hole " + hole.hole_id + " derives nothing within " +
                      std::to_string(cap) + " tokens";
        return;
      }
      min_lens.push_back(m);
      sum_min += m;
    }
    total_len = sum_min;
    if (total_len <= cap) fill_layer();
  }

  void fill_layer() {
    layer.clear();
    layer_pos = 0;
    for (HoleBuckets& b : buckets) b.grow(total_len);
    std::vector<const TokenSeq*> picked(buckets.size(), nullptr);
    build_tuples(0, total_len, picked);
  }

  void build_tuples(size_t hole, int remaining, std::vector<const TokenSeq*>& picked) {
    int tail_min = 0;
    for (size_t h = hole + 1; h < buckets.size(); ++h) tail_min += min_lens[h];
    if (hole + 1 == buckets.size()) {
      const int len = remaining;
      if (len < min_lens[hole] || len > buckets[hole].computed_up_to) return;
      for (const TokenSeq& seq : buckets[hole].by_len[len]) {
        picked[hole] = &seq;
        emit(picked);
      }
      return;
    }
    for (int len = min_lens[hole]; len <= remaining - tail_min; ++len) {
      for (const TokenSeq& seq : buckets[hole].by_len[len]) {
        picked[hole] = &seq;
        build_tuples(hole + 1, remaining - len, picked);
      }
    }
  }

  void emit(const std::vector<const TokenSeq*>& picked) {
    nlohmann::ordered_json mapping = nlohmann::ordered_json::object();
    for (size_t h = 0; h < hole_ids.size(); ++h) mapping[hole_ids[h]] = joined(*picked[h]);
    layer.push_back(mapping.dump());
  }

  GenOutput next_sketch_candidate() {
    while (layer_pos >= layer.size()) {
      ++total_len;
      if (total_len > cap) return GenOutput::exhausted();
      fill_layer();
    }
    return GenOutput::ok(layer[layer_pos++]);
  }
};

EnumeratorGenerator::EnumeratorGenerator(EnumeratorSettings settings) : settings_(settings) {}

EnumeratorGenerator::~EnumeratorGenerator() = default;

GenOutput EnumeratorGenerator::generate(const Benchmark& benchmark, double deadline_secs) {
  if (deadline_secs <= 0) return GenOutput::deadline_exceeded();

  if (!state_ || active_benchmark_ != benchmark.id) {
    state_ = std::make_unique<State>();
    active_benchmark_ = benchmark.id;
    if (const auto* sygus = std::get_if<SygusPayload>(&benchmark.aux)) {
      state_->init_sygus(sygus->problem);
    } else if (const auto* sketch = std::get_if<TlaSketchPayload>(&benchmark.aux)) {
      state_->init_sketch(sketch->sketch, settings_.max_sketch_tokens);
    } else {
      state_->build_error =
          "no enumerative generator for the " + domain_name(benchmark.domain) + " domain";
    }
  }

  if (!state_->build_error.empty()) return GenOutput::transport_error(state_->build_error);

  if (state_->stream) {
    std::optional<Term> body = state_->stream->next();
    if (!body) return GenOutput::exhausted();
    return GenOutput::ok(format_define_fun(state_->fun, *body));
  }
  return state_->next_sketch_candidate();
}

}  // namespace veriloop
