#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fplap/closedforms.hpp"

using namespace fplap;

TEST_CASE("Riccati profile at the origin and the ODE residual") {
  RiccatiParams<double> rp{3.0, 1, 2.0};
  CHECK(riccati_profile(0.0, rp) == doctest::Approx(1.0));
  std::vector<double> r;
  for (int k = 1; k <= 200; ++k) r.push_back(0.05 * k);
  CHECK(riccati_ode_residual(rp, r) < 1e-12);
}

TEST_CASE("Riccati derivative against a central difference") {
  RiccatiParams<double> rp{4.5, 2, 0.7};
  for (double r : {0.3, 1.0, 2.5}) {
    const double h = 1e-5;
    const double fd = (riccati_profile(r + h, rp) - riccati_profile(r - h, rp)) / (2 * h);
    CHECK(riccati_profile_derivative(r, rp) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("wrong profile leaves a residual") {
  RiccatiParams<double> rp{3.0, 1, 1.0};
  const double res = ode_residual(rp, std::vector<double>{0.5, 1.0},
                                  [](double x) { return std::exp(-x); },
                                  [](double x) { return -std::exp(-x); });
  CHECK(res > 1e-2);
}

TEST_CASE("Riccati solution solves U_t = -U^{p-1}") {
  RiccatiParams<double> rp{3.0, 1, 1.0};
  for (double t : {0.1, 1.0, 7.0})
    for (double x : {0.0, 0.5, 3.0}) {
      const double U = riccati_solution(x, t, rp);
      CHECK(std::abs(riccati_solution_dt(x, t, rp) + std::pow(U, 2.0)) < 1e-12);
      const double h = 1e-6;
      const double fd =
          (riccati_solution(x, t + h, rp) - riccati_solution(x, t - h, rp)) / (2 * h);
      CHECK(riccati_solution_dt(x, t, rp) == doctest::Approx(fd).epsilon(1e-6));
    }
  CHECK_THROWS_AS(riccati_solution(0.0, 0.0, rp), ValidationError);
  CHECK_THROWS_AS(riccati_profile(1.0, RiccatiParams<double>{2.0, 1, 1.0}), ValidationError);
}

TEST_CASE("Barenblatt profile support edge") {
  const double p = 3, C = 2, k = 0.5;
  const double edge = barenblatt_edge(p, C, k);
  CHECK(edge == doctest::Approx(std::pow(4.0, 2.0 / 3.0)));
  CHECK(barenblatt_profile(edge * (1 + 1e-9), p, 1, C, k) == 0.0);
  CHECK(barenblatt_profile(0.5 * edge, p, 1, C, k) > 0.0);
  CHECK(barenblatt_profile(0.0, p, 1, C, k) == doctest::Approx(4.0));
}

TEST_CASE("Cauchy kernel mass by independent quadrature") {
  const double t = 0.7, X = 50.0;
  const int m = 100000;
  double s = 0;
  for (int j = 0; j < m; ++j) s += cauchy_kernel(-X + (j + 0.5) * 2 * X / m, t);
  s *= 2 * X / m;
  CHECK(s == doctest::Approx(cauchy_kernel_mass(X, t)).epsilon(1e-7));
  CHECK(cauchy_kernel_mass(1e12, t) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(cauchy_kernel(0.0, 0.0), ValidationError);
}
