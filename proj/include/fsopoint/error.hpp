#pragma once

#include <stdexcept>
#include <string>

namespace fsopoint {

enum class ErrorKind {
  InvalidParameter,
  Unsupported,
  Usage,
  InsufficientData,
  Data,
  Calibration,
  Integration,
  Divergence,
};

/// Single exception type for the library. The kind selects the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Exit status used by the command line front end: 2 usage/config,
/// 3 data, 4 numerical divergence.
int exit_code(ErrorKind kind) noexcept;

[[noreturn]] void throw_invalid(const std::string& field, const std::string& why);

}  // namespace fsopoint
