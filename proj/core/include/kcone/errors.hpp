#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kcone {

// Malformed polynomial text. position is a 0-based character offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("parse error at position " + std::to_string(position) + ": " +
                           message),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Input rejected by validation (non-homogeneous, singular, wrong ring, ...).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative computation did not settle inside its cap; raise the window.
class StabilizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed dimension contradicts a structural assumption (negative cell,
// d(torsion) outside torsion, ...). Indicates a bug or an unsupported input.
class AssumptionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kcone
