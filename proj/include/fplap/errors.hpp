#pragma once

#include <stdexcept>
#include <string>

namespace fplap {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// bad parameters, shapes, malformed input
class ValidationError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf, step blow-up, non-convergence
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fplap
