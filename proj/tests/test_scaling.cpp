#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fplap/norms.hpp"
#include "fplap/scaling.hpp"
#include "fplap/shapes.hpp"

using namespace fplap;

namespace {
const Params prm(0.5, 4.0);
const Grid g(40.0, 1024);
}

TEST_CASE("mass-preserving scaling of a smooth bump") {
  const Field u = smooth_bump(prm, g, 1.0, 4.0).with_time(2.0);
  ScalingReport rep;
  const Field w = scale_solution_k(u, 2.0, &rep);
  CHECK(!rep.truncated);
  CHECK(mass(w) == doctest::Approx(1.0).epsilon(1e-6));
  for (int i : {0, 7, 100}) CHECK(w[i] == doctest::Approx(2.0 * u.value_at(2.0 * g.x(i))).epsilon(1e-12));
  // stamp divided by k^{1/beta}, 1/beta = 4
  CHECK(w.time() == doctest::Approx(2.0 / 16.0));
}

TEST_CASE("scaling composes and inverts") {
  const Field u = smooth_bump(prm, g, 1.0, 3.0).with_time(1.0);
  const Field w = scale_solution_k(scale_solution_k(u, 2.0), 0.5);
  CHECK(w.time() == doctest::Approx(1.0));
  // two interpolation passes
  for (int i : {0, 10, 50, 70}) CHECK(std::abs(w[i] - u[i]) < 2e-3 * u[0]);
}

TEST_CASE("spreading past R is reported") {
  const Field u = box(prm, Grid(10.0, 256), 1.0, 8.0);
  ScalingReport rep;
  scale_solution_k(u, 0.5, &rep);
  CHECK(rep.truncated);
  CHECK(rep.lost_mass > 0.1);
  CHECK(!rep.warning.empty());
}

TEST_CASE("mass scaling") {
  const Field u = box(prm, g, 1.0).with_time(3.0);
  const Field w = scale_solution_M(u, 2.0);
  CHECK(mass(w) == doctest::Approx(2.0));
  CHECK(w.time() == doctest::Approx(3.0 / 4.0));
  const Field n = scale_solution_M(u, -1.0);
  CHECK(mass(n) == doctest::Approx(-1.0));
  CHECK(n.time() == doctest::Approx(3.0));
  CHECK_THROWS_AS(scale_solution_M(u, 0.0), ValidationError);
}

TEST_CASE("self-similar maps are inverse") {
  const Field u = smooth_bump(prm, g, 1.0, 2.0).with_time(3.0);
  const Field v = to_selfsimilar(u, 1.0);
  CHECK(v.kind() == TimeKind::rescaled);
  CHECK(v.time() == doctest::Approx(std::log(4.0)));
  CHECK(mass(v) == doctest::Approx(1.0).epsilon(1e-6));
  const Field back = from_selfsimilar(v, 1.0);
  CHECK(back.kind() == TimeKind::physical);
  CHECK(back.time() == doctest::Approx(3.0));
  for (int i : {0, 5, 30}) CHECK(std::abs(back[i] - u[i]) < 1e-3 * u[0]);
  CHECK_THROWS_AS(from_selfsimilar(u), ValidationError);
  CHECK_THROWS_AS(to_selfsimilar(v), ValidationError);
}
