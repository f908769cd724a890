#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fplap/closedforms.hpp"
#include "fplap/norms.hpp"
#include "fplap/shapes.hpp"

using namespace fplap;

namespace {
const Params prm(0.5, 4.0);
}

TEST_CASE("grid geometry") {
  Grid g(10.0, 100);
  CHECK(g.h() == doctest::Approx(0.1));
  CHECK(g.x(0) == doctest::Approx(0.05));
  CHECK(g.x(99) == doctest::Approx(9.95));
  CHECK_THROWS_AS(Grid(10.0, 8), ValidationError);
  CHECK_THROWS_AS(Grid(-1.0, 64), ValidationError);
}

TEST_CASE("field construction validates") {
  Grid g(10.0, 64);
  CHECK_THROWS_AS(Field(prm, g, Eigen::VectorXd::Zero(63), {}), ValidationError);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(64);
  v[3] = -1.0;
  CHECK_THROWS_AS(Field(prm, g, v, {}, 0.0, TimeKind::physical, true), ValidationError);
  CHECK_THROWS_AS(Field(prm, g, v, {}, -1.0), ValidationError);
  CHECK_THROWS_AS(Field(Params(0.5, 4.0, 2), g, v, {}), ValidationError);
  v[3] = std::nan("");
  CHECK_THROWS_AS(Field(prm, g, v, {}), ValidationError);
}

TEST_CASE("mass of a box and of a pure tail") {
  Grid g(10.0, 1000);
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = g.x(i) < 1.0 ? 1.0 : 0.0;
  const Field box1(prm, g, v, TailModel{0.0, 3.0});
  CHECK(mass(box1) == doctest::Approx(2.0).epsilon(1e-12));
  const Field tail(prm, g, Eigen::VectorXd::Zero(g.n), TailModel{1.0, 3.0});
  CHECK(mass(tail) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(lq_norm(box1, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(lq_norm(box1, 3.0) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
  CHECK(linf_norm(box1) == 1.0);
}

TEST_CASE("critical tail has infinite mass") {
  Grid g(10.0, 64);
  const Field f(prm, g, Eigen::VectorXd::Ones(g.n), TailModel{1.0, 1.0});
  CHECK_THROWS_AS(mass(f), NumericalError);
}

TEST_CASE("L2 norm of the Cauchy kernel against its antiderivative") {
  // int K^2 over the line is 1/(2 pi t)
  Grid g(200.0, 40000);
  const double t = 1.0;
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = cauchy_kernel(g.x(i), t);
  const Field f(Params(0.5, 2.0), g, v, TailModel{t / std::numbers::pi, 2.0});
  CHECK(lq_norm(f, 2.0) == doctest::Approx(std::sqrt(1.0 / (2 * std::numbers::pi * t))).epsilon(1e-6));
  CHECK(mass(f) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("homogeneity under value scaling") {
  Grid g(20.0, 256);
  const Field a = make_shape(Shape::triangle, prm, g, 1.0, 2.0);
  const Field b = box(prm, g, 0.7, 1.0);
  const Field a3 = a.with_values(3.0 * a.values());
  const Field b3 = b.with_values(3.0 * b.values());
  CHECK(mass(a3) == doctest::Approx(3.0 * mass(a)));
  CHECK(lq_norm(a3, 2.0) == doctest::Approx(3.0 * lq_norm(a, 2.0)));
  CHECK(lyapunov_J(a3, b3) == doctest::Approx(3.0 * lyapunov_J(a, b)));
}

TEST_CASE("Lyapunov functional identities") {
  Grid g(20.0, 256);
  const Field u1 = box(prm, g, 2.0, 1.0), u2 = box(prm, g, 1.0, 1.0);
  CHECK(lyapunov_J(u1, u1) == 0.0);
  CHECK(lyapunov_J(u1, u2) == doctest::Approx(mass(u1) - mass(u2)));
  const Field w = make_shape(Shape::triangle, prm, g, 1.3, 3.0);
  CHECK(lyapunov_J(w, u1) + mass(u1) - mass(w) == doctest::Approx(lyapunov_J(u1, w)));
}

TEST_CASE("shapes hold their discrete mass") {
  Grid g(40.0, 512);
  for (Shape s : {Shape::box, Shape::triangle, Shape::two_bump, Shape::dirac_box}) {
    const Field f = make_shape(s, prm, g, 1.7, 1.0);
    CHECK(mass(f) == doctest::Approx(1.7).epsilon(1e-13));
    CHECK(f.nonnegative());
  }
  CHECK(mass(smooth_bump(prm, g, 0.5, 2.0)) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(parse_shape("two-bump") == Shape::two_bump);
  CHECK_THROWS_AS(parse_shape("disk"), ValidationError);
  CHECK_THROWS_AS(make_shape(Shape::box, prm, g, 1.0, 50.0), ValidationError);
}

TEST_CASE("dirac box height") {
  Grid g(40.0, 1024);
  const Field f = dirac_box(prm, g, 1.0);
  CHECK(f[0] == doctest::Approx(1.0 / (8 * g.h())));
  CHECK(f[4] == 0.0);
}

TEST_CASE("interpolation is even, exact at nodes and uses the tail outside") {
  Grid g(10.0, 64);
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = 1.0 / (1.0 + g.x(i) * g.x(i));
  const Field f(prm, g, v, TailModel{1.0, 2.0});
  for (int i : {0, 5, 40, 63}) CHECK(f.value_at(g.x(i)) == doctest::Approx(v[i]).epsilon(1e-14));
  CHECK(f.value_at(-2.3) == f.value_at(2.3));
  CHECK(f.value_at(20.0) == doctest::Approx(1.0 / 400.0));
  // monotone data stays monotone between nodes
  double prev = f.value_at(0.0);
  for (double x = 0.01; x < 10.0; x += 0.01) {
    const double y = f.value_at(x);
    CHECK(y <= prev + 1e-15);
    prev = y;
  }
}

TEST_CASE("tail refit recovers the coefficient") {
  Grid g(20.0, 400);
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = 0.3 * std::pow(g.x(i), -3.0);
  CHECK(fit_tail_coefficient(v, g, 3.0) == doctest::Approx(0.3).epsilon(1e-12));
  const Field f = refit_tail(Field(prm, g, v, TailModel{0.0, 3.0}));
  CHECK(f.tail().C == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(f.tail_mismatch() < 1e-14);
}

TEST_CASE("compatibility checks") {
  const Field a = box(prm, Grid(10.0, 64), 1.0), b = box(prm, Grid(10.0, 128), 1.0);
  CHECK_THROWS_AS(require_compatible(a, b), ValidationError);
  CHECK_THROWS_AS(lyapunov_J(a, b), ValidationError);
  const Field c = box(Params(0.5, 3.0), Grid(10.0, 64), 1.0);
  CHECK_THROWS_AS(require_compatible(a, c), ValidationError);
  CHECK_THROWS_AS(require_same_kind(a, a.with_time(0.0, TimeKind::rescaled)), ValidationError);
}
