#pragma once

#include <limits>

#include "fplap/field.hpp"

namespace fplap {

// integral over the line, grid part plus analytic tail
double mass(const Field& f);
double lq_norm(const Field& f, double q);
inline double linf_norm(const Field& f) {
  return lq_norm(f, std::numeric_limits<double>::infinity());
}
// J = int (u1 - u2)_+
double lyapunov_J(const Field& u1, const Field& u2);

}  // namespace fplap
