#pragma once

#include <stdexcept>
#include <string>

namespace pedeval {

enum class ErrorCode {
  kParse,       // malformed input text or binary
  kValidation,  // well-formed input that violates a domain invariant
  kIo,          // missing or unreadable file
  kDegenerate,  // geometrically degenerate input (singular matrix, collinear points)
  kInternal,
};

const char* to_string(ErrorCode code);

// Exception carried by every failing operation in the library. `context`
// holds a short machine-readable locator (file:line, agent id, frame).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string context = {})
      : std::runtime_error(message), code_(code), context_(std::move(context)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorCode code_;
  std::string context_;
};

}  // namespace pedeval
