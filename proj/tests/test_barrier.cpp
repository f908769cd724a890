#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fplap/barrier.hpp"
#include "fplap/shapes.hpp"

using namespace fplap;

namespace {
const Params prm(0.5, 3.0);
const Barrier& certified() {
  static const Barrier b = build_barrier(prm, 2.0, 2.0, Epsilons::all(0.1));
  return b;
}
}  // namespace

TEST_CASE("constructed barrier satisfies its inequalities") {
  const Barrier& b = certified();
  CHECK(check_inequalities(b).pass);
  CHECK(b.R1 > b.R);
  CHECK(std::log2(b.R1) == doctest::Approx(std::round(std::log2(b.R1))));
}

TEST_CASE("barrier is continuous and nonincreasing") {
  const Barrier& b = certified();
  for (double r : {b.R, b.R1}) {
    CHECK(eval_barrier(b, r * (1 - 1e-12)) == doctest::Approx(eval_barrier(b, r * (1 + 1e-12))));
  }
  double prev = eval_barrier(b, 0.0);
  CHECK(prev == b.A);
  for (double r = 0.01; r < 100; r *= 1.05) {
    CHECK(eval_barrier(b, r) <= prev);
    prev = eval_barrier(b, r);
  }
}

TEST_CASE("outer drift term and dyadic residuals") {
  const Barrier& b = certified();
  const Exponents e = exponents(prm);
  const double r = 2 * b.R1;
  const SupersolutionReport rep = supersolution_residual(b, dyadic_samples(b, 3));
  REQUIRE(rep.samples.size() == 3);
  CHECK(rep.samples[0].r == r);
  CHECK(rep.samples[0].drift ==
        doctest::Approx(e.beta * prm.sp() * b.C1 * std::pow(r, -(1 + prm.sp()))));
  CHECK(rep.pass);
  for (const auto& s : rep.samples) CHECK(s.residual >= 0.0);
  CHECK(supersolution_residual(b, {0.0, 0.5 * b.R}).pass);
  CHECK(certificate_report(b, rep).find("C1") != std::string::npos);
}

TEST_CASE("inner certification raises A") {
  const Barrier b = certify_inner(prm, 0.05, certified().R, Epsilons::all(0.1));
  CHECK(b.A >= 0.05);
  CHECK(supersolution_residual(b, {0.0, 0.5 * b.R}).pass);
}

TEST_CASE("sp >= 2 is unsupported") {
  CHECK_THROWS_AS(build_barrier(Params(0.8, 3.0), 2.0, 2.0, Epsilons::all(0.1)), ValidationError);
  CHECK_THROWS_AS(build_barrier(Params(0.5, 2.0), 2.0, 2.0, Epsilons::all(0.1)), ValidationError);
}

TEST_CASE("domination") {
  const Barrier& b = certified();
  const Grid g(40.0, 512);
  CHECK(barrier_dominates(zero_field(prm, g), b));
  const Field G = barrier_field(b, g);
  CHECK(barrier_dominates(G, b));
  Eigen::VectorXd v = G.values();
  v[10] *= 1.01;
  CHECK(!barrier_dominates(G.with_values(v), b));
  CHECK(!barrier_dominates(G.with_tail(TailModel{2 * b.C1, G.tail().q}), b));
  CHECK_THROWS(barrier_field(b, Grid(4.0, 64)));
}

TEST_CASE("lower comparison function") {
  CHECK(lower_subsolution_value(prm, 0.01, 0.1, 0.5) == 1.0);
  CHECK(lower_subsolution_value(prm, 0.01, 0.1, 4.0) == doctest::Approx(0.001 * std::pow(4.0, -2.5)));
  const double mid = lower_subsolution_value(prm, 0.01, 0.1, 1.5);
  CHECK(mid < 1.0);
  CHECK(mid > lower_subsolution_value(prm, 0.01, 0.1, 2.0));
  const Field U = lower_subsolution(prm, 0.01, 0.1, Grid(20.0, 256));
  CHECK(U.value_at(0.3) == doctest::Approx(1.0));
}

TEST_CASE("bisected subsolution constant") {
  const std::vector<double> r{4.0, 8.0};
  const double c = bisect_subsolution_c(prm, 0.05, r);
  CHECK(c > 0.0);
  for (const auto& s : subsolution_verifier(prm, c, 0.05, r)) CHECK(s.pass);
  bool any_fail = false;
  for (const auto& s : subsolution_verifier(prm, 4 * c, 0.05, r)) any_fail = any_fail || !s.pass;
  CHECK(any_fail);
  CHECK_THROWS(subsolution_verifier(prm, c, 0.05, {2.0}));
}
