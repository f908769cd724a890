#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fplap/params.hpp"

using namespace fplap;

TEST_CASE("exponents at s=1/2, p=4") {
  const Exponents e = exponents(Params(0.5, 4.0));
  CHECK(e.beta == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(e.alpha == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(e.gamma == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.sigma == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("p = 2 reduces to the linear exponents") {
  const Exponents e = exponents(Params(0.5, 2.0));
  CHECK(e.beta == doctest::Approx(1.0));
  CHECK(e.sigma == doctest::Approx(1.0));
}

TEST_CASE("exponent identities hold for random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> us(0.01, 0.99), up(2.0, 10.0);
  for (int k = 0; k < 1000; ++k) {
    const double s = us(rng), p = up(rng);
    for (int N = 1; N <= 3; ++N) {
      const Exponents e = exponents_of(s, p, N);
      CHECK(std::abs(e.alpha + 1 - ((p - 1) * e.alpha + e.beta * s * p)) < 1e-12);
      CHECK(std::abs(e.alpha - N * e.beta) < 1e-14);
    }
  }
}

TEST_CASE("exponents templated on long double") {
  const Exponents e = exponents_of<long double>(0.5L, 3.0L, 1);
  CHECK(e.beta == doctest::Approx(0.4));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(Params(0.0, 3.0), ValidationError);
  CHECK_THROWS_AS(Params(1.0, 3.0), ValidationError);
  CHECK_THROWS_AS(Params(0.5, 1.5), ValidationError);
  CHECK_THROWS_AS(Params(0.5, 3.0, 0), ValidationError);
  CHECK(Params(0.5, 3.0).q() == doctest::Approx(2.5));
}

TEST_CASE("Phi and its integer fast paths agree") {
  CHECK(phi(-2.0, 3.0) == doctest::Approx(-4.0));
  CHECK(phi(1.7, 2.0) == 1.7);
  CHECK(phi(0.0, 2.5) == 0.0);
  for (double p : {2.0, 3.0, 4.0, 5.0, 6.0, 3.5}) {
    with_phi(p, [&](auto f) {
      for (double z : {-1.3, -0.2, 0.0, 0.4, 2.1}) {
        CHECK(f.value(z) == doctest::Approx(phi(z, p)).epsilon(1e-14));
        CHECK(f.abs_pow(z) == doctest::Approx(std::pow(std::abs(z), p)).epsilon(1e-14));
        if (z != 0.0)
          CHECK(f.deriv(z) == doctest::Approx((p - 1) * std::pow(std::abs(z), p - 2)).epsilon(1e-13));
      }
      return 0;
    });
  }
}
