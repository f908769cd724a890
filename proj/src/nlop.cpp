#include "fplap/nlop.hpp"

#include <cmath>
#include <string>

namespace fplap {

void QuadConfig::validate() const {
  if (inner_skip < 1) throw ValidationError("inner_skip must be >= 1");
  if (!(far_factor >= 4.0)) throw ValidationError("far radius must be >= 4 R");
  if (far_nodes < 16) throw ValidationError("far_nodes must be >= 16");
  if (near_cells < 1) throw ValidationError("near_cells must be >= 1");
}

double zeta_tail(double a, long K) {
  if (!(a > 1.0) || K < 1) throw ValidationError("zeta_tail needs a > 1, K >= 1");
  double s = 0.0;
  const long K0 = K + 10;
  for (long k = K0 - 1; k >= K; --k) s += std::pow(double(k), -a);
  const double x = double(K0);
  s += std::pow(x, 1 - a) / (a - 1) + 0.5 * std::pow(x, -a) + a * std::pow(x, -a - 1) / 12 -
       a * (a + 1) * (a + 2) * std::pow(x, -a - 3) / 720 +
       a * (a + 1) * (a + 2) * (a + 3) * (a + 4) * std::pow(x, -a - 5) / 30240;
  return s;
}

OperatorPlan::OperatorPlan(const Params& prm, const Grid& grid, const QuadConfig& cfg)
    : prm_(prm), grid_(grid), cfg_(cfg) {
  cfg_.validate();
  if (prm_.N != 1) throw ValidationError("the operator is implemented for N = 1");
  const double sp = prm_.sp();
  h_ = grid_.h();
  L_ = grid_.n + cfg_.near_cells;
  Rfar_ = cfg_.far_factor * grid_.R;
  const double Rnear = L_ * h_;
  if (!(Rfar_ > Rnear)) throw ValidationError("far radius must exceed the ghost lattice");

  w_.assign(2 * L_ + 1, 0.0);
  for (int k = 1; k <= 2 * L_; ++k) w_[k] = h_ * std::pow(k * h_, -1.0 - sp);

  const int F = cfg_.far_nodes;
  const double rho = std::pow(Rfar_ / Rnear, 1.0 / F);
  fy_.resize(F);
  fdy_.resize(F);
  for (int m = 0; m < F; ++m) {
    const double lo = Rnear * std::pow(rho, m), hi = Rnear * std::pow(rho, m + 1);
    fy_[m] = std::sqrt(lo * hi);
    fdy_[m] = hi - lo;
  }
  fk_.resize(size_t(L_) * F);
  rem_.resize(L_);
  for (int i = 0; i < L_; ++i) {
    const double x = (i + 0.5) * h_;
    for (int m = 0; m < F; ++m)
      fk_[size_t(i) * F + m] =
          fdy_[m] * (std::pow(fy_[m] - x, -1.0 - sp) + std::pow(fy_[m] + x, -1.0 - sp));
    rem_[i] = (std::pow(Rfar_ - x, -sp) + std::pow(Rfar_ + x, -sp)) / sp;
  }

  corr_ = 0.0;
  if (prm_.p == 2.0 && cfg_.singular_correction) {
    // generalized Euler-Maclaurin: sum_{k>=m} h f(kh) - int_0^inf f ~ zeta_H(2s-1, m) (-u'') h^{2-2s}
    const double a = 1.0 - 2.0 * prm_.s;
    double Z = std::riemann_zeta(-a);
    for (int k = 1; k < cfg_.inner_skip; ++k) Z -= std::pow(double(k), a);
    corr_ = Z * std::pow(h_, 2.0 - 2.0 * prm_.s) / (h_ * h_);
  }
}

std::vector<double> OperatorPlan::lattice(const Field& f) const {
  if (!(f.grid() == grid_)) throw ValidationError("field grid does not match the plan");
  std::vector<double> V(2 * size_t(L_));
  const int n = grid_.n;
  for (int j = 0; j < L_; ++j) {
    const double v = j < n ? f[j] : f.tail()((j + 0.5) * h_);
    V[L_ + j] = v;
    V[L_ - 1 - j] = v;
  }
  return V;
}

OperatorPlan::Frame OperatorPlan::frame(const Field& f) const {
  if (f.params().s != prm_.s || f.params().p != prm_.p)
    throw ValidationError("field (s, p) does not match the plan");
  Frame fr;
  fr.V = lattice(f);
  fr.ftail.resize(fy_.size());
  for (size_t m = 0; m < fy_.size(); ++m) fr.ftail[m] = f.tail()(fy_[m]);
  fr.tail_far = f.tail()(Rfar_);
  return fr;
}

template <class Phi, bool Diag>
void OperatorPlan::eval_node(const Frame& fr, int i, const Phi& phi, double* val,
                             double* diag) const {
  const int g = L_ + i;
  const double* Vp = fr.V.data();
  const double ui = Vp[g];
  const double* w = w_.data();
  const int m = cfg_.inner_skip;
  const int kb = L_ - i;
  double s = 0.0, d = 0.0;
  for (int k = m; k < kb; ++k) {
    const double a = ui - Vp[g - k], b = ui - Vp[g + k];
    s += w[k] * (phi.value(a) + phi.value(b));
    if constexpr (Diag) d += w[k] * (phi.deriv(a) + phi.deriv(b));
  }
  for (int k = std::max(m, kb); k <= g; ++k) {
    const double a = ui - Vp[g - k];
    s += w[k] * phi.value(a);
    if constexpr (Diag) d += w[k] * phi.deriv(a);
  }
  const int F = cfg_.far_nodes;
  const double* fk = fk_.data() + size_t(i) * F;
  for (int mm = 0; mm < F; ++mm) {
    const double a = ui - fr.ftail[mm];
    s += fk[mm] * phi.value(a);
    if constexpr (Diag) d += fk[mm] * phi.deriv(a);
  }
  const double a = ui - fr.tail_far;
  s += rem_[i] * phi.value(a);
  if constexpr (Diag) d += rem_[i] * phi.deriv(a);
  if (corr_ != 0.0 && g + 1 < 2 * L_) {
    s += corr_ * (Vp[g + 1] - 2.0 * ui + Vp[g - 1]);
    if constexpr (Diag) d -= 2.0 * corr_;
  }
  *val = s;
  if constexpr (Diag) *diag = d;
}

template <bool Diag>
void OperatorPlan::eval_all(const Field& f, Eigen::VectorXd& val, Eigen::VectorXd* diag) const {
  const Frame fr = frame(f);
  const int n = grid_.n;
  val.resize(n);
  if constexpr (Diag) diag->resize(n);
  with_phi(prm_.p, [&](auto phi) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      double dd = 0.0;
      eval_node<decltype(phi), Diag>(fr, i, phi, &val[i], &dd);
      if constexpr (Diag) (*diag)[i] = dd;
    }
    return 0;
  });
  check_finite(f, val);
}

void OperatorPlan::check_finite(const Field& f, const Eigen::VectorXd& out) const {
  if (out.allFinite()) return;
  int i = 0;
  while (i < out.size() && std::isfinite(out[i])) ++i;
  const std::vector<double> V = lattice(f);
  const int g = L_ + i;
  int bad = -1;
  for (int k = 1; k <= g && bad < 0; ++k) {
    const double a = phi(V[g] - V[g - k], prm_.p) * w_[k];
    const double b = g + k < 2 * L_ ? phi(V[g] - V[g + k], prm_.p) * w_[k] : 0.0;
    if (!std::isfinite(a) || !std::isfinite(b)) bad = k;
  }
  throw NumericalError("non-finite operator value at node " + std::to_string(i) + " (x = " +
                       std::to_string(grid_.x(i)) + "), offending offset " +
                       (bad < 0 ? std::string("in far field") : std::to_string(bad)));
}

Eigen::VectorXd OperatorPlan::apply(const Field& f) const {
  Eigen::VectorXd v;
  eval_all<false>(f, v, nullptr);
  return v;
}

OperatorValues OperatorPlan::apply_with_diag(const Field& f) const {
  OperatorValues o;
  eval_all<true>(f, o.value, &o.diag);
  return o;
}

double OperatorPlan::apply_at(const Field& f, int i) const {
  if (i < 0 || i >= grid_.n) throw ValidationError("node index out of range");
  const Frame fr = frame(f);
  double v = 0.0;
  with_phi(prm_.p, [&](auto phi) {
    eval_node<decltype(phi), false>(fr, i, phi, &v, nullptr);
    return 0;
  });
  if (!std::isfinite(v)) throw NumericalError("non-finite operator value at node " + std::to_string(i));
  return v;
}

double OperatorPlan::energy(const Field& f) const {
  const Frame fr = frame(f);
  const double sp = prm_.sp();
  const int F = cfg_.far_nodes;
  double total = 0.0;
  with_phi(prm_.p, [&](auto phi) {
    // x on the lattice, grid and near ghosts
    double lat = 0.0;
#pragma omp parallel for reduction(+ : lat) schedule(static)
    for (int i = 0; i < L_; ++i) {
      struct AbsPow {
        decltype(phi) f;
        double value(double z) const { return f.abs_pow(z); }
        double deriv(double) const { return 0.0; }
      } ap{phi};
      double e = 0.0;
      // no zeta correction for the energy density
      const int g = L_ + i;
      const double* Vp = fr.V.data();
      const double ui = Vp[g];
      for (int k = cfg_.inner_skip; k < L_ - i; ++k)
        e += w_[k] * (ap.value(ui - Vp[g - k]) + ap.value(ui - Vp[g + k]));
      for (int k = std::max(cfg_.inner_skip, L_ - i); k <= g; ++k)
        e += w_[k] * ap.value(ui - Vp[g - k]);
      const double* fk = fk_.data() + size_t(i) * F;
      for (int mm = 0; mm < F; ++mm) e += fk[mm] * ap.value(ui - fr.ftail[mm]);
      e += rem_[i] * ap.value(ui - fr.tail_far);
      lat += e;
    }
    total += 2.0 * h_ * lat;
    // x on the far geometric nodes, y on the lattice
    for (int mm = 0; mm < F; ++mm) {
      const double x = fy_[mm], ux = fr.ftail[mm];
      double e = 0.0;
      for (int g = 0; g < 2 * L_; ++g) {
        const double y = (g - L_ + 0.5) * h_;
        e += h_ * phi.abs_pow(ux - fr.V[g]) * std::pow(std::abs(x - y), -1.0 - sp);
      }
      e += phi.abs_pow(ux - fr.tail_far) *
           (std::pow(Rfar_ - x, -sp) + std::pow(Rfar_ + x, -sp)) / sp;
      total += 2.0 * fdy_[mm] * e;
    }
    // |x| > R_far, y on the lattice
    double out = 0.0;
    for (int g = 0; g < 2 * L_; ++g) {
      const double y = (g - L_ + 0.5) * h_;
      out += h_ * phi.abs_pow(fr.tail_far - fr.V[g]) *
             (std::pow(Rfar_ - y, -sp) + std::pow(Rfar_ + y, -sp)) / sp;
    }
    total += out;
    return 0;
  });
  const double J = total / prm_.p;
  if (!std::isfinite(J)) throw NumericalError("non-finite energy");
  return J;
}

Eigen::VectorXd apply_operator(const Field& f, const QuadConfig& cfg) {
  return OperatorPlan(f.params(), f.grid(), cfg).apply(f);
}

double apply_operator_at(const Field& f, int i, const QuadConfig& cfg) {
  return OperatorPlan(f.params(), f.grid(), cfg).apply_at(f, i);
}

double gagliardo_energy(const Field& f, const QuadConfig& cfg) {
  return OperatorPlan(f.params(), f.grid(), cfg).energy(f);
}

Eigen::VectorXd apply_operator_line(const Eigen::VectorXd& u, double h, const Params& prm,
                                    int inner_skip) {
  const int n = int(u.size());
  if (n < 2 || !(h > 0.0) || inner_skip < 1) throw ValidationError("bad line lattice");
  const double sp = prm.sp(), a = 1.0 + sp, hs = std::pow(h, -sp);
  std::vector<double> w(n + 1, 0.0);
  for (int k = 1; k <= n; ++k) w[k] = hs * std::pow(double(k), -a);
  Eigen::VectorXd out(n);
  with_phi(prm.p, [&](auto phi) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        const int k = std::abs(i - j);
        if (k >= inner_skip) s += w[k] * phi.value(u[i] - u[j]);
      }
      const double pu = phi.value(u[i]);
      if (pu != 0.0)
        s += pu * hs * (zeta_tail(a, std::max<long>(i + 1, inner_skip)) +
                        zeta_tail(a, std::max<long>(n - i, inner_skip)));
      out[i] = s;
    }
    return 0;
  });
  return out;
}

InterpolationBound interpolation_bound_check(const Field& f, const QuadConfig& cfg) {
  const OperatorPlan plan(f.params(), f.grid(), cfg);
  const std::vector<double> V = plan.lattice(f);
  const int L = plan.half(), n = f.size();
  const double h = f.grid().h(), p = f.params().p, sp = f.params().sp();
  InterpolationBound b;
  b.sup = std::max(f.values().cwiseAbs().maxCoeff(), std::abs(f.tail()(f.grid().R)));
  for (int i = 0; i < n; ++i) {
    const int g = L + i;
    b.sup_d1 = std::max(b.sup_d1, std::abs(V[g + 1] - V[g - 1]) / (2 * h));
    b.sup_d2 = std::max(b.sup_d2, std::abs(V[g + 1] - 2 * V[g] + V[g - 1]) / (h * h));
  }
  b.C1 = std::pow(2.0, p) / sp;
  b.C2 = (p - 1) / (p - sp);
  b.lhs = plan.apply(f).cwiseAbs().maxCoeff();
  const double d1 = p == 2.0 ? 1.0 : std::pow(b.sup_d1, p - 2);
  b.rhs = b.C1 * std::pow(b.sup, p - 1) + b.C2 * d1 * b.sup_d2;
  b.pass = b.lhs <= b.rhs;
  return b;
}

}  // namespace fplap
