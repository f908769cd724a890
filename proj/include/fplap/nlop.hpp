#pragma once

#include <vector>

#include "fplap/field.hpp"

namespace fplap {

struct QuadConfig {
  int inner_skip = 1;        // offsets |k| < inner_skip are left out
  double far_factor = 4.0;   // R_far = far_factor * R
  int far_nodes = 64;        // geometric midpoint nodes per side on (R_near, R_far]
  int near_cells = 32;       // uniform ghost cells past R, filled from the tail model
  bool singular_correction = true;  // zeta correction of the skipped cell, p = 2 only

  void validate() const;
};

struct OperatorValues {
  Eigen::VectorXd value;
  Eigen::VectorXd diag;  // d(Lu)_i / du_i
};

// Kernel weights and far-field nodes for one (grid, s, p, cfg).
class OperatorPlan {
 public:
  OperatorPlan(const Params& prm, const Grid& grid, const QuadConfig& cfg = {});

  const Params& params() const { return prm_; }
  const Grid& grid() const { return grid_; }
  const QuadConfig& config() const { return cfg_; }

  Eigen::VectorXd apply(const Field& f) const;
  OperatorValues apply_with_diag(const Field& f) const;
  double apply_at(const Field& f, int i) const;
  double energy(const Field& f) const;

  // half-length L of the full-line lattice (grid plus near ghosts)
  int half() const { return L_; }
  double weight(int k) const { return w_[k]; }
  // full-line lattice values, index g <-> position (g - L + 1/2) h
  std::vector<double> lattice(const Field& f) const;
  double far_radius() const { return Rfar_; }
  // coefficient c with correction c * (u_{i+1} - 2 u_i + u_{i-1}); 0 when off
  double correction_coefficient() const { return corr_; }

 private:
  struct Frame {
    std::vector<double> V;      // lattice values
    std::vector<double> ftail;  // tail model at the far nodes
    double tail_far;            // tail model at R_far
  };
  Frame frame(const Field& f) const;
  template <class Phi, bool Diag>
  void eval_node(const Frame& fr, int i, const Phi& phi, double* val, double* diag) const;
  template <bool Diag>
  void eval_all(const Field& f, Eigen::VectorXd& val, Eigen::VectorXd* diag) const;
  void check_finite(const Field& f, const Eigen::VectorXd& out) const;

  Params prm_;
  Grid grid_;
  QuadConfig cfg_;
  int L_;
  double h_, Rfar_, corr_;
  std::vector<double> w_;
  std::vector<double> fy_, fdy_;  // far nodes and widths
  std::vector<double> fk_;        // (y-x)^{-1-sp} + (y+x)^{-1-sp} times width, row per node
  std::vector<double> rem_;       // analytic remainder factor per node
};

Eigen::VectorXd apply_operator(const Field& f, const QuadConfig& cfg = {});
double apply_operator_at(const Field& f, int i, const QuadConfig& cfg = {});
double gagliardo_energy(const Field& f, const QuadConfig& cfg = {});

// operator on a raw full-line lattice array, zero outside the array
Eigen::VectorXd apply_operator_line(const Eigen::VectorXd& u, double h, const Params& prm,
                                    int inner_skip = 1);

// sum_{k >= K} k^{-a}, a > 1
double zeta_tail(double a, long K);

struct InterpolationBound {
  double lhs = 0, rhs = 0;
  double C1 = 0, C2 = 0;
  double sup = 0, sup_d1 = 0, sup_d2 = 0;
  bool pass = false;
};

// |Lu| <= C1 |u|_inf^{p-1} + C2 |Du|_inf^{p-2} |D2u|_inf
InterpolationBound interpolation_bound_check(const Field& f, const QuadConfig& cfg = {});

}  // namespace fplap
