#pragma once

#include <stdexcept>
#include <string>

namespace ehl {

// Bad arguments, violated preconditions, malformed input files. CLI exit code 2.
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical breakdown: spectra outside tolerance, degenerate Fermi levels,
// solver failures. CLI exit code 3.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ehl
