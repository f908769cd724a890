#pragma once

#include <Eigen/Dense>

#include "fplap/params.hpp"

namespace fplap {

// cell-centred nodes x_i = (i + 1/2) h on [0, R], even extension implied
struct Grid {
  double R = 40.0;
  int n = 1024;

  Grid() = default;
  Grid(double R_, int n_);

  double h() const { return R / n; }
  double x(int i) const { return (i + 0.5) * h(); }
  Eigen::ArrayXd nodes() const;
  bool operator==(const Grid& o) const { return R == o.R && n == o.n; }
};

// u(x) = C |x|^{-q} for |x| > R
struct TailModel {
  double C = 0.0;
  double q = 2.0;

  double operator()(double r) const { return C == 0.0 ? 0.0 : C * std::pow(r, -q); }
};

enum class TimeKind { physical, rescaled };

const char* to_string(TimeKind k);

class Field {
 public:
  Field(const Params& prm, const Grid& grid, Eigen::VectorXd values,
        TailModel tail, double time = 0.0, TimeKind kind = TimeKind::physical,
        bool nonnegative = false);

  const Params& params() const { return prm_; }
  const Grid& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  int size() const { return grid_.n; }
  const TailModel& tail() const { return tail_; }
  double time() const { return t_; }
  TimeKind kind() const { return kind_; }
  bool nonnegative() const { return nonneg_; }

  Field with_values(Eigen::VectorXd v) const;
  Field with_tail(TailModel tail) const;
  Field with_time(double t) const;
  Field with_time(double t, TimeKind kind) const;

  // monotone cubic with even mirror and tail ghosts; tail formula beyond R
  double value_at(double x) const;
  Eigen::VectorXd sample(const Eigen::ArrayXd& x) const;

  // distance between the outermost node and the tail model there
  double tail_mismatch() const;

 private:
  Params prm_;
  Grid grid_;
  Eigen::VectorXd v_;
  TailModel tail_;
  double t_;
  TimeKind kind_;
  bool nonneg_;
};

// least squares C for v ~ C x^{-q} over the outer 10% of nodes
double fit_tail_coefficient(const Eigen::VectorXd& v, const Grid& grid, double q);

Field refit_tail(const Field& f);

Field make_field(const Params& prm, const Grid& grid, const Eigen::VectorXd& v,
                 double time = 0.0, TimeKind kind = TimeKind::physical);

void require_same_kind(const Field& a, const Field& b);
void require_compatible(const Field& a, const Field& b);

}  // namespace fplap
