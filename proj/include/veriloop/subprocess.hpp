#pragma once

#include <string>
#include <vector>

#include "veriloop/adapter.hpp"

namespace veriloop {

struct SubprocessSpec {
  std::string command;                 // executable path or name (PATH lookup)
  std::vector<std::string> base_args;  // placed before the per-request args
  std::string working_dir;             // empty = inherit
};

/// Adapter running the command once per request: the payload goes to the
/// child's stdin, request args are appended to base_args, and stdout+stderr
/// are captured as the response detail. Exit 0 is Pass, exit 1 Fail. The
/// child's process group is killed at the deadline and reported as Timeout.
/// Any other termination fails the Result (the tool could not run).
Adapter make_subprocess_adapter(SubprocessSpec spec);

}  // namespace veriloop
