#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "fplap/closedforms.hpp"
#include "fplap/nlop.hpp"
#include "fplap/shapes.hpp"

using namespace fplap;

namespace {

Field kernel_field(const Grid& g, double t) {
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = cauchy_kernel(g.x(i), t);
  return Field(Params(0.5, 2.0), g, v, TailModel{t / std::numbers::pi, 2.0});
}

}  // namespace

TEST_CASE("constant fields are in the kernel") {
  for (double p : {2.0, 3.0, 4.0, 3.7}) {
    const Grid g(10.0, 128);
    const Field f(Params(0.4, p), g, Eigen::VectorXd::Constant(g.n, 0.8), TailModel{0.8, 0.0});
    CHECK(apply_operator(f).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("half Laplacian of the Cauchy kernel") {
  // pi (-Delta)^{1/2} K(., t) = (t^2 - x^2) / (t^2 + x^2)^2
  const Grid g(40.0, 1024);
  const double t = 1.0;
  const Eigen::VectorXd Lu = apply_operator(kernel_field(g, t));
  double err = 0, top = 0;
  for (int i = 0; i < g.n && g.x(i) < 5; ++i) {
    const double x = g.x(i), ex = (t * t - x * x) / std::pow(t * t + x * x, 2);
    err = std::max(err, std::abs(Lu[i] - ex));
    top = std::max(top, std::abs(ex));
  }
  CHECK(err / top < 5e-3);
}

TEST_CASE("energy of the Cauchy kernel") {
  // <K, L K> = 1 / (4 t^2) by Plancherel
  const Grid g(40.0, 1024);
  CHECK(gagliardo_energy(kernel_field(g, 1.0)) == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("odd and (p-1)-homogeneous") {
  const Params prm(0.5, 3.0);
  const Grid g(20.0, 256);
  const Field u = make_shape(Shape::triangle, prm, g, 1.0, 2.0);
  const Eigen::VectorXd a = apply_operator(u);
  const Eigen::VectorXd b = apply_operator(u.with_values(-u.values()));
  const Eigen::VectorXd c = apply_operator(u.with_values(2.0 * u.values()));
  CHECK((a + b).cwiseAbs().maxCoeff() < 1e-12 * a.cwiseAbs().maxCoeff());
  CHECK((c - 4.0 * a).cwiseAbs().maxCoeff() < 1e-12 * c.cwiseAbs().maxCoeff());
}

TEST_CASE("single node evaluation and diagonal") {
  const Params prm(0.6, 4.0);
  const Grid g(20.0, 256);
  const Field u = smooth_bump(prm, g, 1.0, 3.0);
  const OperatorPlan plan(prm, g);
  const OperatorValues ov = plan.apply_with_diag(u);
  CHECK((ov.value - plan.apply(u)).cwiseAbs().maxCoeff() == 0.0);
  for (int i : {0, 17, 100, 255}) CHECK(plan.apply_at(u, i) == doctest::Approx(ov.value[i]));
  CHECK(ov.diag.minCoeff() >= 0.0);
  CHECK_THROWS_AS(plan.apply(smooth_bump(prm, Grid(20.0, 128), 1.0, 3.0)), ValidationError);
}

TEST_CASE("bump maximum is pushed down, tails are pushed up") {
  const Params prm(0.5, 4.0);
  const Grid g(20.0, 256);
  const Eigen::VectorXd Lu = apply_operator(box(prm, g, 1.0));
  CHECK(Lu[0] > 0.0);
  CHECK(Lu[g.n - 1] < 0.0);
}

TEST_CASE("zeta tail against direct summation") {
  for (double a : {1.5, 2.0, 3.2}) {
    double direct = 0;
    for (long k = 3; k < 2000000; ++k) direct += std::pow(double(k), -a);
    direct += std::pow(2e6, 1 - a) / (a - 1);  // integral remainder
    CHECK(zeta_tail(a, 3) == doctest::Approx(direct).epsilon(1e-6));
  }
  CHECK(zeta_tail(2.0, 1) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-9));
  CHECK_THROWS_AS(zeta_tail(1.0, 1), ValidationError);
}

TEST_CASE("line operator against a brute-force sum") {
  const Params prm(0.5, 3.0);
  const int n = 64;
  const double h = 0.1, sp = prm.sp();
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = std::sin(0.1 * i) * std::sin(0.1 * i);
  const Eigen::VectorXd Lu = apply_operator_line(u, h, prm);
  for (int i : {0, 20, 63}) {
    double s = 0;
    for (long j = -200000; j < 200000 + n; ++j) {
      if (j == i) continue;
      const double uj = (j >= 0 && j < n) ? u[j] : 0.0;
      s += phi(u[i] - uj, prm.p) * h * std::pow(std::abs(j - i) * h, -1 - sp);
    }
    CHECK(Lu[i] == doctest::Approx(s).epsilon(1e-6));
  }
}

TEST_CASE("interpolation bound") {
  const Params prm(0.5, 4.0);
  const Field u = smooth_bump(prm, Grid(20.0, 512), 1.0, 2.0);
  const InterpolationBound b = interpolation_bound_check(u);
  CHECK(b.pass);
  CHECK(b.lhs > 0.0);
  CHECK(b.C1 == doctest::Approx(16.0 / 2.0));
}

TEST_CASE("quadrature config validation") {
  QuadConfig c;
  c.far_factor = 1.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.inner_skip = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}
