#include "fsopoint/error.hpp"

namespace fsopoint {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::Unsupported:
    case ErrorKind::Usage:
      return 2;
    case ErrorKind::InsufficientData:
    case ErrorKind::Data:
    case ErrorKind::Calibration:
      return 3;
    case ErrorKind::Integration:
    case ErrorKind::Divergence:
      return 4;
  }
  return 1;
}

void throw_invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::InvalidParameter, field + ": " + why);
}

}  // namespace fsopoint
