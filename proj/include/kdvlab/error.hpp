#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kdvlab {

/// Coarse error categories. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  InvalidArgument,
  NonFiniteData,
  GridMismatch,
  Config,
  Io,
  Numerical,
  NotAvailable,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace kdvlab
