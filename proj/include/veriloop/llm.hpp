#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "veriloop/harness.hpp"
#include "veriloop/prompts.hpp"
#include "veriloop/result.hpp"

namespace veriloop {

struct LlmConfig {
  std::string endpoint;  // full URL, e.g. "http://127.0.0.1:8080/v1/chat/completions"
  std::string model_name;
  double temperature = 0.8;
  double top_p = 0.95;
  std::optional<int> top_k;
  std::optional<long long> max_output_tokens;
  std::optional<std::string> reasoning_effort;  // "low" | "medium" | "high"
  /// Name of the environment variable holding the bearer token. The token
  /// itself is never stored in config files or flags and never logged.
  std::string api_key_env;
};

Result<bool> validate_llm_config(const LlmConfig& config);

/// Chat-completions request body for the prompt (deterministic field order).
std::string llm_request_body(const Prompt& prompt, const LlmConfig& config);

/// One chat-completion round trip. A response whose finish_reason is
/// "length" maps to TokenBudgetExceeded (with the partial text kept),
/// HTTP/parse failures to TransportError, and running past the deadline to
/// DeadlineExceeded. `audit`, when given, receives one JSON line per request
/// and response; credentials are redacted, bodies are verbatim.
GenOutput llm_generate(const Prompt& prompt, const LlmConfig& config, double deadline_secs,
                       std::ostream* audit = nullptr);

/// Generator backed by a chat-completions endpoint. Stateless per request:
/// every call rebuilds the same prompt from the benchmark.
class LlmGenerator : public Generator {
 public:
  explicit LlmGenerator(LlmConfig config, std::ostream* audit = nullptr);
  GenOutput generate(const Benchmark& benchmark, double deadline_secs) override;

 private:
  LlmConfig config_;
  std::ostream* audit_;
};

}  // namespace veriloop
