#pragma once

#include <stdexcept>
#include <string>

namespace monofl {

// Coarse classification used by callers (the CLI maps parse -> exit 2,
// verification failures are reported, everything else is a contract bug).
enum class ErrorKind {
  parse,
  dimension,
  invalid_input,
  domain,
  unsupported,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace monofl
