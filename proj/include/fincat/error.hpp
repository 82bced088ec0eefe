#pragma once

#include <stdexcept>
#include <string>

namespace fincat {

// Error taxonomy mirrors the CLI exit contract: schema/usage/guard problems are
// operator errors (exit 2), while violated mathematical laws are reported through
// ValidationReport values rather than thrown.
enum class ErrorKind {
  invalid_input,  // bad arguments to a builder or operation (witness in message)
  guard,          // a size/search-space guard was exceeded
  schema,         // malformed file or JSON shape
  usage,          // bad CLI invocation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::guard: return "guard";
    case ErrorKind::schema: return "schema";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

}  // namespace fincat
