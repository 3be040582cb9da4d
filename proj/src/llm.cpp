#include "veriloop/llm.hpp"

#include <chrono>
#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace veriloop {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json request_json(const Prompt& prompt, const LlmConfig& config) {
  ordered_json body;
  body["model"] = config.model_name;
  body["messages"] = ordered_json::array();
  if (!prompt.system_text.empty()) {
    body["messages"].push_back({{"role", "system"}, {"content", prompt.system_text}});
  }
  body["messages"].push_back({{"role", "user"}, {"content", prompt.user_text}});
  body["temperature"] = config.temperature;
  body["top_p"] = config.top_p;
  if (config.top_k) body["top_k"] = *config.top_k;
  if (config.max_output_tokens) body["max_tokens"] = *config.max_output_tokens;
  if (config.reasoning_effort) body["reasoning_effort"] = *config.reasoning_effort;
  return body;
}

void audit_line(std::ostream* audit, ordered_json line) {
  if (!audit) return;
  (*audit) << line.dump() << "\n";
  audit->flush();
}

/// Splits a URL into the scheme://host[:port] base and the request path.
bool split_endpoint(const std::string& url, std::string& base, std::string& path) {
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) return false;
  size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    base = url;
    path = "/";
  } else {
    base = url.substr(0, path_start);
    path = url.substr(path_start);
  }
  return base.size() > scheme_end + 3;
}

}  // namespace

Result<bool> validate_llm_config(const LlmConfig& config) {
  using R = Result<bool>;
  if (config.endpoint.empty()) return R::fail("endpoint is empty");
  std::string base, path;
  if (!split_endpoint(config.endpoint, base, path)) {
    return R::fail("endpoint is not a URL: " + config.endpoint);
  }
  if (config.model_name.empty()) return R::fail("model_name is empty");
  if (!(config.temperature >= 0)) return R::fail("temperature must be >= 0");
  if (!(config.top_p > 0 && config.top_p <= 1)) return R::fail("top_p must be in (0, 1]");
  if (config.reasoning_effort && *config.reasoning_effort != "low" &&
      *config.reasoning_effort != "medium" && *config.reasoning_effort != "high") {
    return R::fail("reasoning_effort must be low, medium, or high");
  }
  return R::ok(true);
}

std::string llm_request_body(const Prompt& prompt, const LlmConfig& config) {
  return request_json(prompt, config).dump();
}

GenOutput llm_generate(const Prompt& prompt, const LlmConfig& config, double deadline_secs,
                       std::ostream* audit) {
  if (auto valid = validate_llm_config(config); !valid) {
    return GenOutput::transport_error(valid.error());
  }
  if (deadline_secs <= 0) return GenOutput::deadline_exceeded();

  std::string base, path;
  split_endpoint(config.endpoint, base, path);

  httplib::Client client(base);
  if (!client.is_valid()) {
    return GenOutput::transport_error("cannot reach endpoint " + base +
                                      " (https needs a TLS-enabled build)");
  }
  auto limit = std::chrono::duration<double>(deadline_secs);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(limit));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(limit));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(limit));

  httplib::Headers headers;
  bool authed = false;
  if (!config.api_key_env.empty()) {
    if (const char* token = std::getenv(config.api_key_env.c_str()); token && *token) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
      authed = true;
    }
  }

  const std::string body = llm_request_body(prompt, config);
  audit_line(audit, {{"event", "llm_request"},
                     {"endpoint", config.endpoint},
                     {"authorization", authed ? "Bearer ***redacted***" : "none"},
                     {"body", ordered_json::parse(body)}});

  const auto start = std::chrono::steady_clock::now();
  auto res = client.Post(path, headers, body, "application/json");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!res) {
    // httplib reports a read cut off by the timeout as a plain read error, so
    // classify by our own clock.
    if (elapsed >= deadline_secs - 0.05) {
      audit_line(audit, {{"event", "llm_response"}, {"error", "deadline exceeded"}});
      return GenOutput::deadline_exceeded();
    }
    const std::string why = httplib::to_string(res.error());
    audit_line(audit, {{"event", "llm_response"}, {"error", why}});
    return GenOutput::transport_error(why);
  }

  audit_line(audit, {{"event", "llm_response"},
                     {"status", res->status},
                     {"body", res->body}});

  if (res->status != 200) {
    return GenOutput::transport_error("http status " + std::to_string(res->status) + ": " +
                                      res->body.substr(0, 200));
  }

  ordered_json reply = ordered_json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() ||
      reply["choices"].empty()) {
    return GenOutput::transport_error("malformed completion response");
  }
  const auto& choice = reply["choices"][0];
  std::string text;
  if (choice.contains("message") && choice["message"].contains("content") &&
      choice["message"]["content"].is_string()) {
    text = choice["message"]["content"].get<std::string>();
  } else {
    return GenOutput::transport_error("completion response has no message content");
  }
  std::string finish_reason;
  if (choice.contains("finish_reason") && choice["finish_reason"].is_string()) {
    finish_reason = choice["finish_reason"].get<std::string>();
  }
  if (finish_reason == "length") return GenOutput::truncated(std::move(text));
  return GenOutput::ok(std::move(text));
}

LlmGenerator::LlmGenerator(LlmConfig config, std::ostream* audit)
    : config_(std::move(config)), audit_(audit) {}

GenOutput LlmGenerator::generate(const Benchmark& benchmark, double deadline_secs) {
  auto prompt = build_prompt(benchmark);
  if (!prompt) return GenOutput::transport_error("prompt construction failed: " + prompt.error());
  return llm_generate(prompt.value(), config_, deadline_secs, audit_);
}

}  // namespace veriloop
