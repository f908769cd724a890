#include "fplap/field.hpp"

#include <cmath>
#include <string>

namespace fplap {

Grid::Grid(double R_, int n_) : R(R_), n(n_) {
  if (!(R > 0.0) || !std::isfinite(R)) throw ValidationError("grid radius must be positive");
  if (n < 16) throw ValidationError("grid needs n >= 16, got " + std::to_string(n));
}

Eigen::ArrayXd Grid::nodes() const {
  return (Eigen::ArrayXd::LinSpaced(n, 0, n - 1) + 0.5) * h();
}

const char* to_string(TimeKind k) {
  return k == TimeKind::physical ? "physical" : "rescaled";
}

Field::Field(const Params& prm, const Grid& grid, Eigen::VectorXd values, TailModel tail,
             double time, TimeKind kind, bool nonnegative)
    : prm_(prm), grid_(grid), v_(std::move(values)), tail_(tail), t_(time), kind_(kind),
      nonneg_(nonnegative) {
  if (prm_.N != 1) throw ValidationError("fields are stored for N = 1 only");
  if (v_.size() != grid_.n)
    throw ValidationError("value count " + std::to_string(v_.size()) + " != grid n " +
                          std::to_string(grid_.n));
  if (!v_.allFinite()) throw ValidationError("field values must be finite");
  if (!std::isfinite(tail_.C) || !(tail_.q >= 0.0)) throw ValidationError("bad tail model");
  if (!std::isfinite(t_)) throw ValidationError("time stamp must be finite");
  if (kind_ == TimeKind::physical && t_ < 0.0)
    throw ValidationError("physical time must be >= 0");
  if (nonneg_ && (v_.minCoeff() < 0.0 || tail_.C < 0.0))
    throw ValidationError("field flagged nonnegative has negative values");
}

Field Field::with_values(Eigen::VectorXd v) const {
  return Field(prm_, grid_, std::move(v), tail_, t_, kind_, false);
}
Field Field::with_tail(TailModel tail) const {
  return Field(prm_, grid_, v_, tail, t_, kind_, nonneg_ && tail.C >= 0.0);
}
Field Field::with_time(double t) const { return with_time(t, kind_); }
Field Field::with_time(double t, TimeKind kind) const {
  return Field(prm_, grid_, v_, tail_, t, kind, nonneg_);
}

namespace {

// value on the infinite cell-centred lattice, index k <-> (k + 1/2) h
inline double lattice_value(const Field& f, long k) {
  if (k < 0) k = -k - 1;
  if (k < f.size()) return f[int(k)];
  return f.tail()((k + 0.5) * f.grid().h());
}

inline double fb_slope(double a, double b) {
  return a * b <= 0.0 ? 0.0 : 2.0 * a * b / (a + b);
}

}  // namespace

double Field::value_at(double x) const {
  const double r = std::abs(x);
  const double h = grid_.h();
  if (r >= grid_.R + 0.5 * h) return tail_(r);
  const double xi = r / h - 0.5;
  const long k = long(std::floor(xi));
  const double t = xi - k;
  const double ym = lattice_value(*this, k - 1), y0 = lattice_value(*this, k),
               y1 = lattice_value(*this, k + 1), y2 = lattice_value(*this, k + 2);
  const double d0 = fb_slope(y0 - ym, y1 - y0), d1 = fb_slope(y1 - y0, y2 - y1);
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * d1;
}

Eigen::VectorXd Field::sample(const Eigen::ArrayXd& x) const {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = value_at(x[i]);
  return out;
}

double Field::tail_mismatch() const {
  return std::abs(v_[grid_.n - 1] - tail_(grid_.x(grid_.n - 1)));
}

double fit_tail_coefficient(const Eigen::VectorXd& v, const Grid& grid, double q) {
  const int m = std::max(2, grid.n / 10);
  double num = 0.0, den = 0.0;
  for (int i = grid.n - m; i < grid.n; ++i) {
    const double w = std::pow(grid.x(i), -q);
    num += v[i] * w;
    den += w * w;
  }
  return num / den;
}

Field refit_tail(const Field& f) {
  TailModel t = f.tail();
  t.C = fit_tail_coefficient(f.values(), f.grid(), t.q);
  if (f.nonnegative()) t.C = std::max(t.C, 0.0);
  return f.with_tail(t);
}

Field make_field(const Params& prm, const Grid& grid, const Eigen::VectorXd& v, double time,
                 TimeKind kind) {
  TailModel t{0.0, prm.q()};
  t.C = fit_tail_coefficient(v, grid, t.q);
  const bool nonneg = v.size() > 0 && v.minCoeff() >= 0.0;
  if (nonneg) t.C = std::max(t.C, 0.0);
  return Field(prm, grid, v, t, time, kind, nonneg);
}

void require_same_kind(const Field& a, const Field& b) {
  if (a.kind() != b.kind())
    throw ValidationError(std::string("time kinds differ: ") + to_string(a.kind()) + " vs " +
                          to_string(b.kind()));
}

void require_compatible(const Field& a, const Field& b) {
  require_same_kind(a, b);
  if (!(a.grid() == b.grid())) throw ValidationError("fields live on different grids");
  if (a.params().s != b.params().s || a.params().p != b.params().p)
    throw ValidationError("fields carry different (s, p)");
}

}  // namespace fplap
