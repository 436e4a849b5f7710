#include "kdvlab/error.hpp"

namespace kdvlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NonFiniteData: return "non-finite-data";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::NotAvailable: return "not-available";
  }
  return "unknown";
}

}  // namespace kdvlab
