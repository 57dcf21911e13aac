#pragma once

#include <stdexcept>

namespace grasslen {

/// Malformed input document.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical decision could not be made reliably (e.g. odd numeric rank of
/// a skew matrix).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Problem size beyond the configured resource cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace grasslen
