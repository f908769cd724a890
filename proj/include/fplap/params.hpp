#pragma once

#include <cmath>
#include <cstdlib>

#include "fplap/errors.hpp"

namespace fplap {

struct Params {
  double s = 0.5;
  double p = 4.0;
  int N = 1;

  Params() = default;
  Params(double s_, double p_, int N_ = 1);

  double sp() const { return s * p; }
  // default tail exponent N + sp
  double q() const { return N + s * p; }
};

struct Exponents {
  double alpha;
  double beta;
  double gamma;
  double sigma;
};

template <typename Scalar>
Exponents exponents_of(Scalar s, Scalar p, int N) {
  const Scalar sp = s * p;
  const Scalar beta = Scalar(1) / (Scalar(N) * (p - 2) + sp);
  return {double(N * beta), double(beta), double(sp * beta),
          double(1 + (p - 2) * sp * beta)};
}

Exponents exponents(const Params& prm);

template <typename Scalar>
inline Scalar phi(Scalar z, Scalar p) {
  using std::abs;
  using std::pow;
  if (p == Scalar(2)) return z;
  if (z == Scalar(0)) return Scalar(0);
  return pow(abs(z), p - 2) * z;
}

// Phi(z) = |z|^{p-2} z with an integer fast path, picked once per loop.
template <int M>
struct PhiInt {
  static double value(double z) {
    if constexpr (M == 0) return z;
    else if constexpr (M == 1) return std::abs(z) * z;
    else if constexpr (M == 2) return z * z * z;
    else if constexpr (M == 3) { double a = z * z; return std::abs(z) * a * z; }
    else { double a = z * z; return a * a * z; }
  }
  static double deriv(double z) {
    if constexpr (M == 0) return 1.0;
    else if constexpr (M == 1) return 2.0 * std::abs(z);
    else if constexpr (M == 2) return 3.0 * z * z;
    else if constexpr (M == 3) return 4.0 * std::abs(z) * z * z;
    else { double a = z * z; return 5.0 * a * a; }
  }
  // |z|^p
  static double abs_pow(double z) {
    double a = z * z;
    if constexpr (M == 0) return a;
    else if constexpr (M == 1) return std::abs(z) * a;
    else if constexpr (M == 2) return a * a;
    else if constexpr (M == 3) return std::abs(z) * a * a;
    else return a * a * a;
  }
};

struct PhiReal {
  double p;
  double value(double z) const {
    return z == 0.0 ? 0.0 : std::pow(std::abs(z), p - 2) * z;
  }
  double deriv(double z) const {
    return z == 0.0 ? 0.0 : (p - 1) * std::pow(std::abs(z), p - 2);
  }
  double abs_pow(double z) const { return std::pow(std::abs(z), p); }
};

template <typename F>
decltype(auto) with_phi(double p, F&& f) {
  const double m = p - 2;
  if (m == 0) return f(PhiInt<0>{});
  if (m == 1) return f(PhiInt<1>{});
  if (m == 2) return f(PhiInt<2>{});
  if (m == 3) return f(PhiInt<3>{});
  if (m == 4) return f(PhiInt<4>{});
  return f(PhiReal{p});
}

}  // namespace fplap
