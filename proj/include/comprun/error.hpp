#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace comprun {

enum class ErrorCode {
  invalid_argument,
  cap_exceeded,
  no_convergence,
  infeasible_tolerance,
  refused,
  parse_error,
  numeric,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::infeasible_tolerance: return "infeasible_tolerance";
    case ErrorCode::refused: return "refused";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::numeric: return "numeric";
  }
  return "unknown";
}

/// Library-wide exception. The code is stable and printed by the CLI as
/// `error[<code>]: <message>`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace comprun
