#include "fplap/norms.hpp"

#include <cmath>

namespace fplap {

namespace {

// int_{|x|>R} |C x^{-q}|^r dx over both sides
double tail_power_integral(const Field& f, double r) {
  const TailModel& t = f.tail();
  if (t.C == 0.0) return 0.0;
  const double e = r * t.q;
  if (!(e > f.params().N))
    throw NumericalError("tail exponent q = " + std::to_string(t.q) +
                         " gives an infinite tail integral");
  const double R = f.grid().R;
  return 2.0 * std::pow(std::abs(t.C), r) * std::pow(R, 1.0 - e) / (e - 1.0);
}

}  // namespace

double mass(const Field& f) {
  const TailModel& t = f.tail();
  double tail = 0.0;
  if (t.C != 0.0) {
    if (!(t.q > f.params().N))
      throw NumericalError("tail exponent q = " + std::to_string(t.q) +
                           " <= N: tail mass diverges");
    tail = 2.0 * t.C * std::pow(f.grid().R, 1.0 - t.q) / (t.q - 1.0);
  }
  return 2.0 * f.grid().h() * f.values().sum() + tail;
}

double lq_norm(const Field& f, double q) {
  if (std::isinf(q)) {
    const double tail = std::abs(f.tail()(f.grid().R));
    return std::max(f.values().cwiseAbs().maxCoeff(), tail);
  }
  if (!(q >= 1.0)) throw ValidationError("norm index must be >= 1");
  const double grid = 2.0 * f.grid().h() * f.values().array().abs().pow(q).sum();
  return std::pow(grid + tail_power_integral(f, q), 1.0 / q);
}

double lyapunov_J(const Field& u1, const Field& u2) {
  require_compatible(u1, u2);
  const Grid& g = u1.grid();
  double J = 2.0 * g.h() * (u1.values() - u2.values()).cwiseMax(0.0).sum();
  const TailModel &a = u1.tail(), &b = u2.tail();
  if (a.q == b.q) {
    const double dc = std::max(a.C - b.C, 0.0);
    if (dc > 0.0) J += 2.0 * dc * std::pow(g.R, 1.0 - a.q) / (a.q - 1.0);
    return J;
  }
  // distinct exponents: geometric midpoint rule out to 1e4 R
  const int m = 400;
  const double rho = std::pow(1e4, 1.0 / m);
  for (int k = 0; k < m; ++k) {
    const double lo = g.R * std::pow(rho, k), hi = lo * rho, mid = std::sqrt(lo * hi);
    J += 2.0 * (hi - lo) * std::max(a(mid) - b(mid), 0.0);
  }
  return J;
}

}  // namespace fplap
