#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "fplap/diagnostics.hpp"

using namespace fplap;

namespace {
const Params prm(0.5, 4.0);
const Grid g(40.0, 256);

const Profile& unit_profile() {
  static const Profile pr = compute_profile(prm, 1.0, g);
  return pr;
}
}  // namespace

TEST_CASE("profile shape and tail") {
  const Profile& pr = unit_profile();
  CHECK(pr.measured_mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(pr.field.kind() == TimeKind::rescaled);
  CHECK(pr.field.values().minCoeff() > 0.0);
  CHECK(radial_monotone_check(pr.field).pass);
  CHECK(std::abs(pr.tail_fit.slope + 3.0) < 0.15);
  CHECK(profile_residual(pr).value < 0.15);
}

TEST_CASE("fundamental solution scaling law") {
  const Profile& pr = unit_profile();
  const Exponents e = exponents(prm);
  CHECK(eval_fundamental(pr, 0.7, 1.0) == doctest::Approx(pr.field.value_at(0.7)));
  const double t = 3.0, x = 1.3, M = 2.0;
  const double lam = std::pow(M, -(prm.p - 2) * e.beta);
  const double ex =
      std::pow(M, e.gamma) * std::pow(t, -e.alpha) * pr.field.value_at(lam * x * std::pow(t, -e.beta));
  CHECK(eval_fundamental(pr, x, t, M) == doctest::Approx(ex).epsilon(1e-12));
  CHECK(eval_fundamental(pr, x, t, -M) == doctest::Approx(-ex).epsilon(1e-12));
  CHECK_THROWS_AS(eval_fundamental(pr, x, 0.0, M), ValidationError);
  CHECK(mass(fundamental_field(pr, g, 2.0, 1.5)) == doctest::Approx(1.5).epsilon(2e-3));
}

TEST_CASE("mass map of the profile matches a direct mass-2 run") {
  const Profile& pr = unit_profile();
  const Field F2 = rescale_profile_mass(pr, 2.0);
  CHECK(mass(F2) == doctest::Approx(2.0).epsilon(1e-3));
  const Profile direct = compute_profile(prm, 2.0, g);
  CHECK(relative_l1(direct.field, F2) < 0.01);
}

TEST_CASE("tail fit of an exact power law") {
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = 0.4 * std::pow(g.x(i), -2.5);
  const TailFit tf = fit_tail(Field(prm, g, v, TailModel{0.4, 2.5}));
  CHECK(tf.slope == doctest::Approx(-2.5).epsilon(1e-10));
  CHECK(tf.coefficient == doctest::Approx(0.4).epsilon(1e-8));
  Eigen::VectorXd z = v;
  z[int(0.7 * g.n)] = 0.0;
  CHECK_THROWS(fit_tail(Field(prm, g, z, TailModel{0.4, 2.5})));
}

TEST_CASE("profile files round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "fplap_test_profile";
  std::filesystem::remove_all(dir);
  write_profile(unit_profile(), dir.string(), "F");
  for (const char* f : {"F.csv", "F_loglog.csv", "F.json", "F.field"})
    CHECK(std::filesystem::exists(dir / f));
  const Profile back = read_profile(dir.string(), "F");
  CHECK((back.field.values().array() == unit_profile().field.values().array()).all());
  CHECK(back.tail_fit.slope == unit_profile().tail_fit.slope);
  std::filesystem::remove_all(dir);
}

TEST_CASE("linear case has no profile") {
  CHECK_THROWS_AS(compute_profile(Params(0.5, 2.0), 1.0, g), ValidationError);
}
