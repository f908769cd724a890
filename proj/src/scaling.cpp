#include "fplap/scaling.hpp"

#include <cmath>

#include "fplap/norms.hpp"

namespace fplap {

namespace {

Eigen::VectorXd resample(const Field& u, double stretch, double amp) {
  const Grid& g = u.grid();
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = amp * u.value_at(stretch * g.x(i));
  return v;
}

void require_physical(const Field& u, const char* what) {
  if (u.kind() != TimeKind::physical)
    throw ValidationError(std::string(what) + " needs a physical-time field");
}

}  // namespace

Field scale_solution_k(const Field& u, double k, ScalingReport* report) {
  if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("scaling factor k must be > 0");
  require_physical(u, "scale_solution_k");
  const Params& prm = u.params();
  const double beta = exponents(prm).beta;
  TailModel tail = u.tail();
  tail.C *= std::pow(k, prm.N - tail.q);
  Field out(prm, u.grid(), resample(u, k, std::pow(k, prm.N)), tail,
            u.time() / std::pow(k, 1.0 / beta), TimeKind::physical, u.nonnegative());
  if (report) {
    *report = {};
    if (k < 1.0) {
      const Grid& g = u.grid();
      double lost = 0.0;
      for (int i = 0; i < g.n; ++i)
        if (g.x(i) > k * g.R) lost += 2.0 * g.h() * u[i];
      report->lost_mass = lost;
      const double m = std::abs(mass(u));
      if (std::abs(lost) > 1e-6 * std::max(m, 1e-300)) {
        report->truncated = true;
        report->warning = "support leaves the grid: mass " + std::to_string(lost) +
                          " now carried by the tail model only";
      }
    }
  }
  return out;
}

Field scale_solution_M(const Field& u, double M) {
  if (!(M != 0.0) || !std::isfinite(M)) throw ValidationError("mass factor M must be nonzero");
  require_physical(u, "scale_solution_M");
  TailModel tail = u.tail();
  tail.C *= M;
  const double stamp = u.time() / std::pow(std::abs(M), u.params().p - 2);
  return Field(u.params(), u.grid(), M * u.values(), tail, stamp, TimeKind::physical,
               u.nonnegative() && M > 0);
}

Field to_selfsimilar(const Field& u, double a) {
  if (!(a > 0.0)) throw ValidationError("time shift a must be > 0");
  require_physical(u, "to_selfsimilar");
  const Exponents e = exponents(u.params());
  const double T = u.time() + a;
  TailModel tail = u.tail();
  tail.C *= std::pow(T, e.alpha - e.beta * tail.q);
  return Field(u.params(), u.grid(), resample(u, std::pow(T, e.beta), std::pow(T, e.alpha)),
               tail, std::log(T), TimeKind::rescaled, u.nonnegative());
}

Field from_selfsimilar(const Field& v, double a) {
  if (!(a > 0.0)) throw ValidationError("time shift a must be > 0");
  if (v.kind() != TimeKind::rescaled)
    throw ValidationError("from_selfsimilar needs a rescaled-time field");
  const Exponents e = exponents(v.params());
  const double T = std::exp(v.time());
  double t = T - a;
  if (t < 0.0) {
    if (t < -1e-12 * T) throw ValidationError("rescaled time precedes t = 0 for this shift a");
    t = 0.0;
  }
  TailModel tail = v.tail();
  tail.C *= std::pow(T, e.beta * tail.q - e.alpha);
  return Field(v.params(), v.grid(),
               resample(v, std::pow(T, -e.beta), std::pow(T, -e.alpha)), tail, t,
               TimeKind::physical, v.nonnegative());
}

}  // namespace fplap
