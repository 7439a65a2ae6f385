// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <stdexcept>

namespace corrnoise {

// Structural parameter outside its contract (group sizes, correlations,
// deltas, config values).  Message names the offending quantity.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Noise level or condition-number budget outside the admissible range of the
// target algorithm.  Message reports the binding constraint.
class AdmissibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Iterative kernel exhausted its documented sweep limit.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace corrnoise
