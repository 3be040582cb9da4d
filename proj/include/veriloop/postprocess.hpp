#pragma once

#include <string>

#include "veriloop/benchmark.hpp"
#include "veriloop/result.hpp"

namespace veriloop {

/// Extracts the checkable candidate from a raw generator response.
///   Reactive/AIGER: from the realizability header through the circuit body.
///   Reactive/SMV:   the first fenced code block, or the whole text if none.
///   Sygus:          every top-level define-fun, reprinted canonically.
///   TlaSketch:      the JSON object, reserialized compactly.
///   Acl2sSketch:    all top-level s-expressions, reprinted canonically.
/// Extraction never rewrites content beyond canonical reprinting; running it
/// on its own output yields the same candidate.
Result<std::string> postprocess(const std::string& raw_response, const Benchmark& benchmark);

/// Strips the first fenced code block if present; otherwise returns the
/// input unchanged. The info tag after the opening fence is dropped.
std::string first_fenced_block(const std::string& text);

}  // namespace veriloop
