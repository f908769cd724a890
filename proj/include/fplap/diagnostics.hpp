#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fplap/barrier.hpp"
#include "fplap/evolve.hpp"
#include "fplap/norms.hpp"
#include "fplap/profile.hpp"

namespace fplap {

struct CheckReport {
  std::string name;
  bool pass = false;
  bool applicable = true;
  std::vector<std::pair<std::string, double>> values;
  double tolerance = 0;
  std::string context;
  std::string violation;  // extremal violating datum, set when failing

  double value(const std::string& key) const;
  CheckReport& add(const std::string& key, double v) {
    values.emplace_back(key, v);
    return *this;
  }
};

std::string to_text(const CheckReport& r);
// rows name,pass,value,tolerance; one row per measured value
std::string to_csv(const std::vector<CheckReport>& rs);
void write_reports(const std::vector<CheckReport>& rs, const std::string& txt_path,
                   const std::string& csv_path);

// (1/2) int int_D |Phi(a) - Phi(b)| dmu, D the crossing set of u1 - u2 (strict signs)
double crossing_dissipation_rate(const Field& u1, const Field& u2, const QuadConfig& cfg = {});

// J(t_k) - J(t_{k+1}) >= (1 - tol) * trapezoid of the rate, per interval
CheckReport dissipation_check(const Trajectory& a, const Trajectory& b,
                              const QuadConfig& cfg = {}, double tol = 0.1);

// slope of log |u|_inf vs log t on [t_lo, t_hi]; C_fit = sup |u|_inf t^alpha / |u0|_1^gamma
CheckReport smoothing_fit(const Trajectory& tr, double t_lo, double t_hi, double tol = 0.1);

struct ConvergenceOptions {
  int last = 5;
  double thr_l1 = 0.05;    // times |M|
  double thr_linf = 0.05;  // times F_M(0)
};

CheckReport convergence_to_fundamental(const Trajectory& tr, const Profile& pr,
                                       const ConvergenceOptions& opt = {});

CheckReport harnack_sandwich(const Trajectory& tr, const Profile& pr, double M1, double M2,
                             double c2, double tau_start);

struct HarnackConstants {
  double M1 = 0, M2 = 0, c2 = 0;
};

// M1 largest below, M2 smallest above at t = tau_start, then widened by `margin`
HarnackConstants bisect_harnack(const Trajectory& tr, const Profile& pr, double tau_start,
                                double c2 = 1.0, double margin = 0.02);

// C1 < u |x|^{N+sp} t^{-sp beta} < C2 on t^beta <= |x| <= outer R, t >= t_min
CheckReport harnack_tail_window(const Trajectory& tr, double t_min = 1.0,
                                double ratio_max = 20.0, double outer = 0.9);

struct FloorConstants {
  double r0 = 0, c1 = 0, R_eps = 0;
};

// mass argument under a dominating barrier: M/3 inside r0, M/6 beyond R_eps
FloorConstants positivity_floor_constants(const Barrier& b, double M);

CheckReport positivity_floor(const Trajectory& rescaled, double r0, double c1);

CheckReport radial_monotone_check(const Field& f, double r_from = 0.0, double tol = 1e-8);

CheckReport mass_drift_check(const Trajectory& tr, double tol = 1e-3);
// |u|_q nonincreasing, q in {1, 2, inf}
CheckReport norms_monotone_check(const Trajectory& tr, double tol = 1e-6);
// energy nonincreasing and J(t) <= |u0|_2^2 / (p t)
CheckReport energy_decay_check(const Trajectory& tr, double tol = 0.05);
// |u(t1)|^2 - |u(t2)|^2 = int int int |u(x)-u(y)|^p dmu dt (trapezoid)
CheckReport energy_balance_check(const Trajectory& tr, double tol = 0.02);
// (p-2) t u_t + u >= -tol |u|_inf, centred in time between snapshots
CheckReport benilan_crandall_check(const Trajectory& tr, double tol = 1e-3);
// |u1 - u2|_1 nonincreasing
CheckReport l1_contraction_check(const Trajectory& a, const Trajectory& b, double tol = 1e-8);
CheckReport barrier_domination_check(const Trajectory& tr, const Barrier& b);

// relative L1 distance |a - b|_1 / |b|_1, same grid
double relative_l1(const Field& a, const Field& b);

}  // namespace fplap
