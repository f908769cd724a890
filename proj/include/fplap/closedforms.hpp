#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fplap/errors.hpp"

namespace fplap {

template <typename Scalar = double>
struct RiccatiParams {
  Scalar p = 3;
  int N = 1;
  Scalar C = 1;

  void validate() const {
    if (!(p > 2)) throw ValidationError("Riccati family needs p > 2");
    if (N < 1) throw ValidationError("Riccati family needs N >= 1");
    if (!(C > 0)) throw ValidationError("Riccati family needs C > 0");
  }
};

// F(r) = ((p-2) + C r^{N(p-2)})^{-1/(p-2)}
template <typename Scalar>
Scalar riccati_profile(Scalar r, const RiccatiParams<Scalar>& rp) {
  rp.validate();
  if (r < 0) throw ValidationError("riccati_profile needs r >= 0");
  using std::pow;
  const Scalar m = rp.N * (rp.p - 2);
  return pow((rp.p - 2) + rp.C * pow(r, m), -1 / (rp.p - 2));
}

// F'(r) = -N C r^{N(p-2)-1} F^{p-1}
template <typename Scalar>
Scalar riccati_profile_derivative(Scalar r, const RiccatiParams<Scalar>& rp) {
  using std::pow;
  const Scalar m = rp.N * (rp.p - 2);
  const Scalar F = riccati_profile(r, rp);
  return -rp.N * rp.C * pow(r, m - 1) * pow(F, rp.p - 1);
}

// max over samples of |N F + r F' - N (p-2) F^{p-1}| for any (F, F')
template <typename Scalar, class Fn, class dFn>
Scalar ode_residual(const RiccatiParams<Scalar>& rp, const std::vector<Scalar>& r, Fn F, dFn dF) {
  using std::abs;
  using std::pow;
  Scalar worst = 0;
  for (Scalar x : r) {
    if (!(x > 0)) throw ValidationError("residual samples must be > 0");
    const Scalar f = F(x);
    const Scalar res = rp.N * f + x * dF(x) - rp.N * (rp.p - 2) * pow(f, rp.p - 1);
    worst = std::max(worst, Scalar(abs(res)));
  }
  return worst;
}

template <typename Scalar>
Scalar riccati_ode_residual(const RiccatiParams<Scalar>& rp, const std::vector<Scalar>& r) {
  return ode_residual(rp, r, [&](Scalar x) { return riccati_profile(x, rp); },
                      [&](Scalar x) { return riccati_profile_derivative(x, rp); });
}

// U(x,t) = ((p-2) t + C |x|^{N(p-2)})^{-1/(p-2)}, U_t = -U^{p-1}
template <typename Scalar>
Scalar riccati_solution(Scalar x, Scalar t, const RiccatiParams<Scalar>& rp) {
  rp.validate();
  using std::abs;
  using std::pow;
  if (t < 0) throw ValidationError("riccati_solution needs t >= 0");
  if (t == 0 && x == 0) throw ValidationError("riccati_solution is singular at (0,0)");
  return pow((rp.p - 2) * t + rp.C * pow(abs(x), rp.N * (rp.p - 2)), -1 / (rp.p - 2));
}

template <typename Scalar>
Scalar riccati_solution_dt(Scalar x, Scalar t, const RiccatiParams<Scalar>& rp) {
  using std::abs;
  using std::pow;
  const Scalar B = (rp.p - 2) * t + rp.C * pow(abs(x), rp.N * (rp.p - 2));
  return -pow(B, -(rp.p - 1) / (rp.p - 2));
}

// F(r) = (C - k r^{p/(p-1)})_+^{(p-1)/(p-2)}
template <typename Scalar>
Scalar barenblatt_profile(Scalar r, Scalar p, int N, Scalar C, Scalar k) {
  if (!(p > 2) || N < 1 || !(C > 0) || !(k > 0))
    throw ValidationError("Barenblatt profile needs p > 2, C > 0, k > 0");
  using std::pow;
  const Scalar base = C - k * pow(r, p / (p - 1));
  return base <= 0 ? Scalar(0) : pow(base, (p - 1) / (p - 2));
}

template <typename Scalar>
Scalar barenblatt_edge(Scalar p, Scalar C, Scalar k) {
  using std::pow;
  return pow(C / k, (p - 1) / p);
}

// M t / (pi (t^2 + x^2)), the s = 1/2 heat kernel
template <typename Scalar>
Scalar cauchy_kernel(Scalar x, Scalar t, Scalar M = 1) {
  if (!(t > 0)) throw ValidationError("cauchy_kernel needs t > 0");
  return M * t / (std::numbers::pi_v<Scalar> * (t * t + x * x));
}

// mass of the kernel on [-X, X]
template <typename Scalar>
Scalar cauchy_kernel_mass(Scalar X, Scalar t, Scalar M = 1) {
  if (!(t > 0)) throw ValidationError("cauchy_kernel needs t > 0");
  using std::atan;
  return 2 * M * atan(X / t) / std::numbers::pi_v<Scalar>;
}

}  // namespace fplap
