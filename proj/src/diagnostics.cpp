#include "fplap/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "fplap/errors.hpp"

namespace fplap {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string context_of(const Trajectory& tr) {
  const Field& f = tr.snapshots.front().field;
  std::ostringstream os;
  os << "s=" << f.params().s << " p=" << f.params().p << " N=" << f.params().N
     << " R=" << f.grid().R << " n=" << f.grid().n << " t=[" << fmt(tr.snapshots.front().stats.time)
     << ", " << fmt(tr.snapshots.back().stats.time) << "] snapshots=" << tr.snapshots.size();
  return os.str();
}

void require_nonempty(const Trajectory& tr) {
  if (tr.snapshots.empty()) throw ValidationError("empty trajectory");
}

void require_matching(const Trajectory& a, const Trajectory& b) {
  require_nonempty(a);
  require_nonempty(b);
  if (a.snapshots.size() != b.snapshots.size())
    throw ValidationError("trajectories have different snapshot counts");
  for (size_t k = 0; k < a.snapshots.size(); ++k) {
    if (a.snapshots[k].stats.time != b.snapshots[k].stats.time)
      throw ValidationError("snapshot times differ at index " + std::to_string(k));
    require_compatible(a.snapshots[k].field, b.snapshots[k].field);
  }
}

double l1_distance(const Field& a, const Field& b) {
  return lyapunov_J(a, b) + lyapunov_J(b, a);
}

double linf_distance(const Field& a, const Field& b) {
  double d = (a.values() - b.values()).cwiseAbs().maxCoeff();
  const double R = a.grid().R;
  return std::max(d, std::abs(a.tail()(R) - b.tail()(R)));
}

}  // namespace

double CheckReport::value(const std::string& key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  throw ValidationError("report '" + name + "' has no value '" + key + "'");
}

std::string to_text(const CheckReport& r) {
  std::ostringstream os;
  os << "[" << (!r.applicable ? "N/A " : r.pass ? "PASS" : "FAIL") << "] " << r.name;
  for (const auto& [k, v] : r.values) os << " " << k << "=" << fmt(v);
  os << " tol=" << fmt(r.tolerance);
  if (!r.context.empty()) os << " (" << r.context << ")";
  if (!r.violation.empty()) os << "\n    worst: " << r.violation;
  return os.str();
}

std::string to_csv(const std::vector<CheckReport>& rs) {
  std::ostringstream os;
  os << "name,pass,value,tolerance\n";
  for (const auto& r : rs) {
    const char* ok = !r.applicable ? "na" : r.pass ? "1" : "0";
    if (r.values.empty()) os << r.name << "," << ok << ",," << fmt(r.tolerance) << "\n";
    for (const auto& [k, v] : r.values)
      os << r.name << ":" << k << "," << ok << "," << fmt(v) << "," << fmt(r.tolerance) << "\n";
  }
  return os.str();
}

void write_reports(const std::vector<CheckReport>& rs, const std::string& txt_path,
                   const std::string& csv_path) {
  std::ofstream t(txt_path), c(csv_path);
  if (!t || !c) throw ValidationError("cannot write report files");
  for (const auto& r : rs) t << to_text(r) << "\n";
  c << to_csv(rs);
}

double crossing_dissipation_rate(const Field& u1, const Field& u2, const QuadConfig& cfg) {
  require_compatible(u1, u2);
  const OperatorPlan plan(u1.params(), u1.grid(), cfg);
  const std::vector<double> A = plan.lattice(u1), B = plan.lattice(u2);
  const int L = plan.half(), m = cfg.inner_skip;
  const double h = u1.grid().h();
  // ordered pairs with w(x) > 0 > w(y), half of the symmetric crossing set.
  // Strict signs: where u1 = u2 the pair carries no dissipation.
  return with_phi(u1.params().p, [&](auto phi) {
    double total = 0.0;
    for (int i = 0; i < L; ++i) {
      const int gx = L + i;
      if (!(A[gx] - B[gx] > 0.0)) continue;
      double s = 0.0;
      for (int g = 0; g < 2 * L; ++g) {
        const int k = std::abs(g - gx);
        if (k < m) continue;
        if (!(A[g] - B[g] < 0.0)) continue;
        s += plan.weight(k) * std::abs(phi.value(A[gx] - A[g]) - phi.value(B[gx] - B[g]));
      }
      total += s;
    }
    return 2.0 * h * total;  // x < 0 mirrors x > 0
  });
}

CheckReport dissipation_check(const Trajectory& a, const Trajectory& b, const QuadConfig& cfg,
                              double tol) {
  require_matching(a, b);
  CheckReport r;
  r.name = "dissipation";
  r.tolerance = tol;
  r.context = context_of(a);
  const size_t K = a.snapshots.size();
  std::vector<double> J(K), rate(K);
  for (size_t k = 0; k < K; ++k) {
    J[k] = lyapunov_J(a.snapshots[k].field, b.snapshots[k].field);
    rate[k] = crossing_dissipation_rate(a.snapshots[k].field, b.snapshots[k].field, cfg);
  }
  const double scale = std::max(J.front(), 1e-300);
  bool ok = true, strict = true;
  double worst = std::numeric_limits<double>::infinity(), min_drop = worst;
  double lhs_total = 0, rhs_total = 0;
  for (size_t k = 0; k + 1 < K; ++k) {
    const double dt = a.snapshots[k + 1].stats.time - a.snapshots[k].stats.time;
    const double drop = J[k] - J[k + 1];
    const double integral = 0.5 * dt * (rate[k] + rate[k + 1]);
    lhs_total += drop;
    rhs_total += integral;
    min_drop = std::min(min_drop, drop);
    if (!(drop > 0.0)) strict = false;
    // monotonicity is exact; the inequality carries the bookkeeping slack
    const double slack = drop - (1.0 - tol) * integral;
    const bool good = drop >= -1e-12 * scale && slack >= -1e-12 * scale;
    const double rel = integral > 0 ? drop / integral : 1.0;
    if (rel < worst) worst = rel;
    if (!good && ok) {
      ok = false;
      r.violation = "interval [" + fmt(a.snapshots[k].stats.time) + ", " +
                    fmt(a.snapshots[k + 1].stats.time) + "]: dJ=" + fmt(drop) +
                    " integral=" + fmt(integral);
    }
  }
  r.pass = ok;
  r.add("J0", J.front()).add("J_end", J.back()).add("total_drop", lhs_total);
  r.add("total_integral", rhs_total).add("min_drop", K > 1 ? min_drop : 0.0);
  r.add("min_ratio", K > 1 ? worst : 1.0).add("strictly_decreasing", strict ? 1.0 : 0.0);
  return r;
}

CheckReport smoothing_fit(const Trajectory& tr, double t_lo, double t_hi, double tol) {
  require_nonempty(tr);
  double first = 0, last = 0;
  for (const auto& s : tr.snapshots)
    if (s.stats.time > 0) {
      if (first == 0) first = s.stats.time;
      last = s.stats.time;
    }
  if (first == 0 || std::log10(last / first) < 1.5)
    throw ValidationError("smoothing fit needs a horizon of at least 1.5 decades in t");
  const Params& prm = tr.snapshots.front().field.params();
  const Exponents e = exponents(prm);
  const double l1_0 = tr.snapshots.front().stats.l1;

  double sx = 0, sy = 0, sxx = 0, sxy = 0, Cfit = 0;
  int m = 0;
  for (const auto& s : tr.snapshots) {
    const double t = s.stats.time;
    if (t <= 0) continue;
    Cfit = std::max(Cfit, s.stats.linf * std::pow(t, e.alpha) / std::pow(l1_0, e.gamma));
    if (t < t_lo || t > t_hi || !(s.stats.linf > 0)) continue;
    const double x = std::log(t), y = std::log(s.stats.linf);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++m;
  }
  if (m < 3) throw ValidationError("smoothing fit window holds fewer than 3 snapshots");
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  CheckReport r;
  r.name = "smoothing";
  r.tolerance = tol;
  r.context = context_of(tr);
  r.add("slope", slope).add("expected", -e.alpha).add("C_fit", Cfit);
  r.pass = std::abs(slope + e.alpha) <= tol * e.alpha;
  if (!r.pass) r.violation = "slope " + fmt(slope) + " vs " + fmt(-e.alpha);
  return r;
}

CheckReport convergence_to_fundamental(const Trajectory& tr, const Profile& pr,
                                       const ConvergenceOptions& opt) {
  require_nonempty(tr);
  const double M = tr.snapshots.front().stats.mass;
  if (std::abs(std::abs(M) - pr.mass) > 1e-3 * pr.mass)
    throw ValidationError("trajectory mass " + fmt(M) + " does not match profile mass " +
                          fmt(pr.mass));
  const Exponents e = exponents(pr.params());
  std::vector<double> t, d1, dinf;
  for (const auto& s : tr.snapshots) {
    if (s.stats.time <= 0) continue;
    const Field U = fundamental_field(pr, s.field.grid(), s.stats.time, M);
    t.push_back(s.stats.time);
    d1.push_back(l1_distance(s.field, U));
    dinf.push_back(std::pow(s.stats.time, e.alpha) * linf_distance(s.field, U));
  }
  CheckReport r;
  r.name = "convergence";
  r.context = context_of(tr);
  r.tolerance = opt.thr_l1;
  if (t.size() < size_t(opt.last)) {
    r.pass = false;
    r.violation = "fewer than " + std::to_string(opt.last) + " positive-time snapshots";
    return r;
  }
  const double thr1 = opt.thr_l1 * std::abs(M);
  const double thrinf = opt.thr_linf * std::abs(eval_fundamental(pr, 0.0, 1.0, M));
  bool mono = true;
  const size_t k0 = t.size() - opt.last;
  // rounding-level wiggles of an already converged run do not count
  const double floor1 = 1e-10 * thr1, floorinf = 1e-10 * thrinf;
  for (size_t k = k0; k + 1 < t.size(); ++k) {
    if (d1[k + 1] > d1[k] + floor1 || dinf[k + 1] > dinf[k] + floorinf) {
      if (mono)
        r.violation = "increase between t=" + fmt(t[k]) + " and t=" + fmt(t[k + 1]) +
                      ": l1 " + fmt(d1[k]) + "->" + fmt(d1[k + 1]) + ", scaled linf " +
                      fmt(dinf[k]) + "->" + fmt(dinf[k + 1]);
      mono = false;
    }
  }
  r.add("l1_final", d1.back()).add("l1_threshold", thr1);
  r.add("linf_scaled_final", dinf.back()).add("linf_threshold", thrinf);
  r.add("monotone_last", mono ? 1.0 : 0.0);
  r.pass = mono && d1.back() < thr1 && dinf.back() < thrinf;
  if (!r.pass && r.violation.empty())
    r.violation = "final l1 " + fmt(d1.back()) + ", scaled linf " + fmt(dinf.back()) +
                  " at t=" + fmt(t.back());
  return r;
}

namespace {

// min over nodes of u - U_{M1}(t) and U_{M2}(t + c2) - u, with the worst node
struct Margin {
  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double x_lo = 0, x_hi = 0;
};

Margin sandwich_margin(const Field& u, const Profile& pr, double t, double M1, double M2,
                       double c2) {
  Margin m;
  const Grid& g = u.grid();
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    if (M1 > 0) {
      const double d = u[i] - eval_fundamental(pr, x, t, M1);
      if (d < m.lo) m.lo = d, m.x_lo = x;
    }
    const double d = eval_fundamental(pr, x, t + c2, M2) - u[i];
    if (d < m.hi) m.hi = d, m.x_hi = x;
  }
  return m;
}

}  // namespace

CheckReport harnack_sandwich(const Trajectory& tr, const Profile& pr, double M1, double M2,
                             double c2, double tau_start) {
  require_nonempty(tr);
  CheckReport r;
  r.name = "harnack";
  r.context = context_of(tr);
  double lo = std::numeric_limits<double>::infinity(), hi = lo;
  int checked = 0;
  for (const auto& s : tr.snapshots) {
    const double t = s.stats.time;
    if (t < tau_start) continue;
    const Margin m = sandwich_margin(s.field, pr, t, M1, M2, c2);
    ++checked;
    if (m.lo < lo) {
      lo = m.lo;
      if (lo < 0) r.violation = "lower bound at t=" + fmt(t) + " x=" + fmt(m.x_lo) +
                                " short by " + fmt(-lo);
    }
    if (m.hi < hi) {
      hi = m.hi;
      if (hi < 0 && lo >= 0)
        r.violation = "upper bound at t=" + fmt(t) + " x=" + fmt(m.x_hi) + " short by " +
                      fmt(-hi);
    }
  }
  r.add("M1", M1).add("M2", M2).add("c2", c2).add("snapshots", checked);
  r.add("min_lower_margin", lo).add("min_upper_margin", hi);
  r.pass = checked > 0 && lo >= 0 && hi >= 0;
  if (checked == 0) r.violation = "no snapshot at t >= " + fmt(tau_start);
  return r;
}

HarnackConstants bisect_harnack(const Trajectory& tr, const Profile& pr, double tau_start,
                                double c2, double margin) {
  require_nonempty(tr);
  const Snapshot* snap = nullptr;
  for (const auto& s : tr.snapshots)
    if (s.stats.time >= tau_start) {
      snap = &s;
      break;
    }
  if (!snap) throw ValidationError("no snapshot at t >= tau_start");
  const Field& u = snap->field;
  const double t = snap->stats.time, M0 = snap->stats.mass;
  auto below = [&](double M) { return sandwich_margin(u, pr, t, M, M0, 0.0).lo >= 0; };
  auto above = [&](double M) { return sandwich_margin(u, pr, t, 0.0, M, c2).hi >= 0; };

  // geometric bisection; U_M is increasing in M at fixed (x, t)
  double a = M0 * 1e-8, b = M0;
  if (!below(a)) throw NumericalError("no fundamental solution fits below the data");
  for (int it = 0; it < 60; ++it) {
    const double c = std::sqrt(a * b);
    (below(c) ? a : b) = c;
  }
  HarnackConstants hc;
  hc.M1 = a * (1.0 - margin);
  hc.c2 = c2;
  a = M0, b = 2 * M0;
  while (!above(b)) {
    a = b, b *= 2;
    if (b > 1e8 * M0) throw NumericalError("no fundamental solution fits above the data");
  }
  for (int it = 0; it < 60; ++it) {
    const double c = std::sqrt(a * b);
    (above(c) ? b : a) = c;
  }
  hc.M2 = b * (1.0 + margin);
  return hc;
}

CheckReport harnack_tail_window(const Trajectory& tr, double t_min, double ratio_max,
                                double outer) {
  require_nonempty(tr);
  const Params& prm = tr.snapshots.front().field.params();
  const Exponents e = exponents(prm);
  const double q = prm.N + prm.sp();
  double C1 = std::numeric_limits<double>::infinity(), C2 = 0;
  std::string at_min, at_max;
  for (const auto& s : tr.snapshots) {
    const double t = s.stats.time;
    if (t < t_min) continue;
    const Grid& g = s.field.grid();
    const double x0 = std::pow(t, e.beta);
    for (int i = 0; i < g.n; ++i) {
      const double x = g.x(i);
      if (x < x0 || x > outer * g.R) continue;
      const double w = s.field[i] * std::pow(x, q) * std::pow(t, -prm.sp() * e.beta);
      if (w < C1) C1 = w, at_min = "t=" + fmt(t) + " x=" + fmt(x);
      if (w > C2) C2 = w, at_max = "t=" + fmt(t) + " x=" + fmt(x);
    }
  }
  CheckReport r;
  r.name = "harnack_tail_window";
  r.context = context_of(tr);
  r.tolerance = ratio_max;
  const bool any = C2 > 0;
  r.add("C1", any ? C1 : 0.0).add("C2", C2).add("ratio", any && C1 > 0 ? C2 / C1 : 0.0);
  r.pass = any && C1 > 0 && C2 / C1 <= ratio_max;
  if (!r.pass)
    r.violation = any ? "min at " + at_min + ", max at " + at_max : "empty window";
  return r;
}

FloorConstants positivity_floor_constants(const Barrier& b, double M) {
  if (!(M > 0)) throw ValidationError("floor constants need positive mass");
  const double sp = b.params.sp();
  FloorConstants fc;
  fc.r0 = std::min(M / (6.0 * b.A), b.R);
  fc.R_eps = std::max(b.R1, std::pow(12.0 * b.C1 / (sp * M), 1.0 / sp));
  fc.c1 = 0.5 * M / (2.0 * (fc.R_eps - fc.r0));
  return fc;
}

CheckReport positivity_floor(const Trajectory& tr, double r0, double c1) {
  require_nonempty(tr);
  CheckReport r;
  r.name = "positivity_floor";
  r.context = context_of(tr);
  r.tolerance = c1;
  double floor = std::numeric_limits<double>::infinity(), any = 0;
  std::string where;
  for (const auto& s : tr.snapshots) {
    const Field& v = s.field;
    any = std::max(any, v.values().cwiseAbs().maxCoeff());
    double m = v.value_at(r0);
    for (int i = 0; i < v.size() && v.grid().x(i) <= r0; ++i) m = std::min(m, v[i]);
    if (m < floor) floor = m, where = "tau=" + fmt(s.stats.time);
  }
  r.add("floor", floor).add("c1", c1).add("r0", r0);
  if (any == 0) {
    r.applicable = false;
    r.pass = true;
    r.violation = "zero data";
    return r;
  }
  r.pass = floor >= c1;
  if (!r.pass) r.violation = "floor " + fmt(floor) + " at " + where;
  return r;
}

CheckReport radial_monotone_check(const Field& f, double r_from, double tol) {
  CheckReport r;
  r.name = "radial_monotone";
  r.tolerance = tol;
  double worst = 0;
  int at = -1;
  const Grid& g = f.grid();
  for (int i = 0; i + 1 < g.n; ++i) {
    if (g.x(i) < r_from) continue;
    const double rise = f[i + 1] - f[i];
    if (rise > worst) worst = rise, at = i;
  }
  r.add("max_rise", worst);
  r.pass = worst <= tol;
  if (!r.pass)
    r.violation = "rise " + fmt(worst) + " between x=" + fmt(g.x(at)) + " and x=" +
                  fmt(g.x(at + 1));
  return r;
}

CheckReport mass_drift_check(const Trajectory& tr, double tol) {
  require_nonempty(tr);
  CheckReport r;
  r.name = "mass_drift";
  r.tolerance = tol;
  r.context = context_of(tr);
  const double m0 = tr.snapshots.front().stats.mass;
  double worst = 0, at = 0;
  for (const auto& s : tr.snapshots) {
    const double d = std::abs(s.stats.mass - m0) / std::max(std::abs(m0), 1e-300);
    if (d > worst) worst = d, at = s.stats.time;
  }
  if (m0 == 0) worst = 0;
  r.add("mass0", m0).add("max_rel_drift", worst);
  r.pass = worst <= tol;
  if (!r.pass) r.violation = "drift " + fmt(worst) + " at t=" + fmt(at);
  return r;
}

CheckReport norms_monotone_check(const Trajectory& tr, double tol) {
  require_nonempty(tr);
  CheckReport r;
  r.name = "norms_monotone";
  r.tolerance = tol;
  r.context = context_of(tr);
  double worst = 0;
  for (size_t k = 0; k + 1 < tr.snapshots.size(); ++k) {
    const SnapshotStats &a = tr.snapshots[k].stats, &b = tr.snapshots[k + 1].stats;
    const double pairs[3][2] = {{a.l1, b.l1}, {a.l2, b.l2}, {a.linf, b.linf}};
    const char* names[3] = {"l1", "l2", "linf"};
    for (int q = 0; q < 3; ++q) {
      const double rise = (pairs[q][1] - pairs[q][0]) / std::max(pairs[q][0], 1e-300);
      if (rise > worst) {
        worst = rise;
        if (rise > tol)
          r.violation = std::string(names[q]) + " grows by " + fmt(rise) + " at t=" +
                        fmt(b.time);
      }
    }
  }
  r.add("max_rel_rise", worst);
  r.pass = worst <= tol;
  return r;
}

CheckReport energy_decay_check(const Trajectory& tr, double tol) {
  require_nonempty(tr);
  CheckReport r;
  r.name = "energy_decay";
  r.tolerance = tol;
  r.context = context_of(tr);
  const double p = tr.snapshots.front().field.params().p;
  const double l2sq = std::pow(tr.snapshots.front().stats.l2, 2);
  double rise = 0, bound_ratio = 0;
  bool ok = true;
  for (size_t k = 0; k < tr.snapshots.size(); ++k) {
    const SnapshotStats& s = tr.snapshots[k].stats;
    if (!std::isfinite(s.energy)) continue;
    if (k > 0 && std::isfinite(tr.snapshots[k - 1].stats.energy)) {
      const double e0 = tr.snapshots[k - 1].stats.energy;
      const double d = (s.energy - e0) / std::max(e0, 1e-300);
      rise = std::max(rise, d);
      if (d > 1e-9 && ok) ok = false, r.violation = "energy grows at t=" + fmt(s.time);
    }
    if (s.time > 0) {
      const double ratio = s.energy / (l2sq / (p * s.time));
      bound_ratio = std::max(bound_ratio, ratio);
      if (ratio > 1 + tol && ok)
        ok = false, r.violation = "energy bound exceeded at t=" + fmt(s.time);
    }
  }
  r.add("max_rel_rise", rise).add("max_bound_ratio", bound_ratio);
  r.pass = ok;
  return r;
}

CheckReport energy_balance_check(const Trajectory& tr, double tol) {
  require_nonempty(tr);
  CheckReport r;
  r.name = "energy_balance";
  r.tolerance = tol;
  r.context = context_of(tr);
  const double p = tr.snapshots.front().field.params().p;
  // rough data has a huge or infinite energy at t = 0, so start past it
  size_t k0 = 0;
  while (k0 < tr.snapshots.size() && (tr.snapshots[k0].stats.time <= 0 ||
                                      !std::isfinite(tr.snapshots[k0].stats.energy)))
    ++k0;
  if (k0 + 1 >= tr.snapshots.size()) {
    r.applicable = false;
    r.pass = true;
    r.violation = "fewer than two snapshots with finite energy";
    return r;
  }
  double integral = 0;
  for (size_t k = k0; k + 1 < tr.snapshots.size(); ++k) {
    const SnapshotStats &a = tr.snapshots[k].stats, &b = tr.snapshots[k + 1].stats;
    integral += 0.5 * (b.time - a.time) * p * (a.energy + b.energy);
  }
  const double drop = std::pow(tr.snapshots[k0].stats.l2, 2) - std::pow(tr.snapshots.back().stats.l2, 2);
  const double rel = std::abs(drop - integral) / std::max(std::abs(drop), 1e-300);
  r.add("l2sq_drop", drop).add("dissipation_integral", integral).add("rel_error", rel);
  r.pass = rel <= tol;
  if (!r.pass) r.violation = "mismatch " + fmt(rel);
  return r;
}

CheckReport benilan_crandall_check(const Trajectory& tr, double tol) {
  require_nonempty(tr);
  CheckReport r;
  r.name = "benilan_crandall";
  r.tolerance = tol;
  r.context = context_of(tr);
  const double p = tr.snapshots.front().field.params().p;
  double worst = 0;
  for (size_t k = 0; k + 1 < tr.snapshots.size(); ++k) {
    const Snapshot &a = tr.snapshots[k], &b = tr.snapshots[k + 1];
    if (a.stats.time <= 0) continue;
    const double dt = b.stats.time - a.stats.time, tm = 0.5 * (a.stats.time + b.stats.time);
    const Eigen::VectorXd ut = (b.field.values() - a.field.values()) / dt;
    const Eigen::VectorXd um = 0.5 * (a.field.values() + b.field.values());
    const double scale = std::max(um.cwiseAbs().maxCoeff(), 1e-300);
    const Eigen::VectorXd lhs = (p - 2) * tm * ut + um;
    const int n = int(lhs.size());
    for (int i = 0; i < n; ++i) {
      const double d = -lhs[i] / scale;
      if (d > worst) {
        worst = d;
        if (d > tol)
          r.violation = "t=" + fmt(tm) + " x=" + fmt(a.field.grid().x(i)) + " value " +
                        fmt(lhs[i]);
      }
    }
  }
  r.add("max_rel_violation", worst);
  r.pass = worst <= tol;
  return r;
}

CheckReport l1_contraction_check(const Trajectory& a, const Trajectory& b, double tol) {
  require_matching(a, b);
  CheckReport r;
  r.name = "l1_contraction";
  r.tolerance = tol;
  r.context = context_of(a);
  double prev = l1_distance(a.snapshots[0].field, b.snapshots[0].field), worst = 0;
  const double d0 = prev;
  for (size_t k = 1; k < a.snapshots.size(); ++k) {
    const double d = l1_distance(a.snapshots[k].field, b.snapshots[k].field);
    const double rise = (d - prev) / std::max(d0, 1e-300);
    if (rise > worst) {
      worst = rise;
      if (rise > tol) r.violation = "distance grows at t=" + fmt(a.snapshots[k].stats.time);
    }
    prev = d;
  }
  r.add("d0", d0).add("d_end", prev).add("max_rel_rise", worst);
  r.pass = worst <= tol;
  return r;
}

CheckReport barrier_domination_check(const Trajectory& tr, const Barrier& b) {
  require_nonempty(tr);
  CheckReport r;
  r.name = "barrier_domination";
  r.context = context_of(tr);
  int bad = 0;
  for (const auto& s : tr.snapshots)
    if (!barrier_dominates(s.field, b)) {
      if (bad++ == 0) r.violation = "first violation at tau=" + fmt(s.stats.time);
    }
  r.add("snapshots", double(tr.snapshots.size())).add("violations", bad);
  r.pass = bad == 0;
  return r;
}

double relative_l1(const Field& a, const Field& b) {
  const double nb = lq_norm(b, 1.0);
  if (!(nb > 0)) throw ValidationError("relative L1 against a zero field");
  return l1_distance(a, b) / nb;
}

}  // namespace fplap
