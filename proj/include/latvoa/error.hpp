#pragma once

#include <stdexcept>
#include <string>

namespace latvoa {

// Base class for all library errors.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad caller input: malformed lattice data, precondition violations, etc.
struct invalid_input : error {
  explicit invalid_input(const std::string& msg) : error(msg) {}
};

// A claimed module containment does not hold over the integers.
struct containment_error : invalid_input {
  explicit containment_error(const std::string& msg) : invalid_input(msg) {}
};

// An internal consistency property failed; indicates a defect, not bad input.
struct invariant_violation : error {
  explicit invariant_violation(const std::string& msg) : error(msg) {}
};

}  // namespace latvoa
