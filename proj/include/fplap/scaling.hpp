#pragma once

#include <string>

#include "fplap/field.hpp"

namespace fplap {

struct ScalingReport {
  bool truncated = false;
  double lost_mass = 0.0;  // grid mass pushed past R, kept only via the tail model
  std::string warning;
};

// k^N u(k x); the snapshot stamp T maps to T / k^{1/beta}
Field scale_solution_k(const Field& u, double k, ScalingReport* report = nullptr);

// M u; the stamp T maps to T / M^{p-2}
Field scale_solution_M(const Field& u, double M);

// v(y) = (t+a)^alpha u(y (t+a)^beta), tau = log(t+a)
Field to_selfsimilar(const Field& u, double a = 1.0);
Field from_selfsimilar(const Field& v, double a = 1.0);

}  // namespace fplap
