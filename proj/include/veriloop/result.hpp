#pragma once

#include <optional>
#include <string>
#include <utility>

namespace veriloop {

/// Value-or-error carrier used by parsers and checkers.
/// Errors are plain messages; positions are embedded as "line N: ..." text.
template <typename T>
class Result {
 public:
  static Result ok(T value) {
    Result r;
    r.value_ = std::move(value);
    return r;
  }

  static Result fail(std::string message) {
    Result r;
    r.error_ = std::move(message);
    return r;
  }

  bool is_ok() const { return value_.has_value(); }
  explicit operator bool() const { return is_ok(); }

  const T& value() const { return *value_; }
  T& value() { return *value_; }
  T take() { return std::move(*value_); }

  const std::string& error() const { return error_; }

 private:
  std::optional<T> value_;
  std::string error_;
};

}  // namespace veriloop
