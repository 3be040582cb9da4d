#pragma once

#include <string>
#include <utility>
#include <vector>

#include "veriloop/benchmark.hpp"
#include "veriloop/result.hpp"

namespace veriloop {

struct Prompt {
  std::string system_text;  // empty when the domain uses a single message
  std::string user_text;
};

struct PromptTemplate {
  DomainKind domain = DomainKind::Sygus;
  std::string system_text;
  std::string user_template;  // contains "{{ name }}" placeholders
};

/// Built-in template for a domain; Reactive picks by output target.
PromptTemplate prompt_template(DomainKind domain, ReactiveTarget target = ReactiveTarget::Aiger);

/// Replaces every occurrence of "{{ key }}" with the paired value.
std::string fill_placeholders(std::string text,
                              const std::vector<std::pair<std::string, std::string>>& values);

/// Instantiates the domain template from the benchmark payload. Pure; the
/// same benchmark always yields the same prompt. Fails with
/// "missing placeholder value: <name>" when a required field is absent.
/// A sketch benchmark flagged relaxed_grammar omits the grammar section.
Result<Prompt> build_prompt(const Benchmark& benchmark);

}  // namespace veriloop
