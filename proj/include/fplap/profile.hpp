#pragma once

#include <string>
#include <vector>

#include "fplap/evolve.hpp"
#include "fplap/shapes.hpp"

namespace fplap {

struct TailFit {
  double slope = 0;
  double coefficient = 0;
  double r_lo = 0, r_hi = 0;
  double rms = 0;
};

// least-squares slope of log v against log r on [lo R, hi R]
TailFit fit_tail(const Field& f, double lo = 0.5, double hi = 0.9);

struct ProfileOptions {
  double tol = 1e-6;           // |dv/dtau|_1 at stationarity
  double check_interval = 0.5; // tau between stationarity checks
  double tau_max = 120.0;
  Shape shape = Shape::box;    // mass-M bump of half-width 1
  bool check_second_shape = false;  // rerun from a triangle and report the L1 gap
  QuadConfig quad;
  StepController ctrl;
};

struct Profile {
  Field field;                 // stationary, rescaled kind
  double mass = 1;             // declared M
  double measured_mass = 1;
  TailFit tail_fit;
  double residual = 0;         // last |dv|_1 / dtau
  std::vector<double> residual_history;
  double tau = 0;
  long steps = 0;
  double shape_gap = -1;       // L1 distance to the second-shape run, -1 if not run

  const Params& params() const { return field.params(); }
};

Profile compute_profile(const Params& prm, double M, const Grid& grid,
                        const ProfileOptions& opt = {});

// U(x,t;M) = M^{sp beta} t^{-alpha} F(M^{-(p-2) beta} x t^{-beta}) with F of mass 1
double eval_fundamental(const Profile& pr, double x, double t, double M);
// same with M = profile mass
double eval_fundamental(const Profile& pr, double x, double t);
// U(., t; M) on a grid with its power tail
Field fundamental_field(const Profile& pr, const Grid& grid, double t, double M);

// profile of mass M from the stored one via the exact mass scaling
Field rescale_profile_mass(const Profile& pr, double M);

struct ProfileResidual {
  double value = 0;
  bool degenerate = false;  // zero drift term, 0/0 guarded
};

// |L F - beta (y F)_y|_1 / |beta (y F)_y|_1 over the inner 90% of nodes
ProfileResidual profile_residual(const Field& F, const QuadConfig& cfg = {});
inline ProfileResidual profile_residual(const Profile& pr, const QuadConfig& cfg = {}) {
  return profile_residual(pr.field, cfg);
}

// <dir>/<stem>.csv (r,F), <stem>_loglog.csv, <stem>.json, <stem>.field
void write_profile(const Profile& pr, const std::string& dir, const std::string& stem);
Profile read_profile(const std::string& dir, const std::string& stem);

}  // namespace fplap
