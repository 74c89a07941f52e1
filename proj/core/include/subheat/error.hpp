#pragma once

#include <stdexcept>
#include <string>

namespace subheat {

// Error taxonomy mirrored by the CLI exit codes: usage/domain -> 2,
// numerical or I/O failure -> 3.
enum class ErrorCode {
  invalid_argument,  // bad parameters, malformed input, precondition violation
  config,            // config-file parse/validation problem
  numerical,         // solver non-convergence, quadrature failure
  io,                // filesystem, corrupt or stale cache
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace subheat
