#include "fplap/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "fplap/field_io.hpp"
#include "fplap/norms.hpp"

namespace fplap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

FlowMode parse_mode(const std::string& s) {
  if (s == "cauchy" || s == "physical") return FlowMode::cauchy;
  if (s == "rescaled") return FlowMode::rescaled;
  throw ValidationError("unknown flow mode '" + s + "' (cauchy|rescaled)");
}

RecordSchedule RecordSchedule::uniform(double dt) {
  if (!(dt > 0)) throw ValidationError("record spacing must be > 0");
  RecordSchedule r;
  r.kind = Kind::uniform;
  r.spacing = dt;
  return r;
}

RecordSchedule RecordSchedule::geometric(double base, int per_decade) {
  if (!(base > 0) || per_decade < 1) throw ValidationError("bad geometric record schedule");
  RecordSchedule r;
  r.kind = Kind::geometric;
  r.base = base;
  r.per_decade = per_decade;
  return r;
}

RecordSchedule RecordSchedule::list(std::vector<double> t) {
  RecordSchedule r;
  r.kind = Kind::list;
  std::sort(t.begin(), t.end());
  r.times = std::move(t);
  return r;
}

double RecordSchedule::next_after(double t) const {
  switch (kind) {
    case Kind::uniform: {
      const double m = std::floor(t / spacing + 1e-9) + 1.0;
      return m * spacing;
    }
    case Kind::geometric: {
      if (t < base * (1 - 1e-12)) return base;
      const double m = std::floor(per_decade * std::log10(t / base) + 1e-9) + 1.0;
      return base * std::pow(10.0, m / per_decade);
    }
    case Kind::list:
      for (double x : times)
        if (x > t * (1 + 1e-14) + 1e-300) return x;
      return kInf;
  }
  return kInf;
}

void StepController::validate() const {
  if (!(c_safe > 0 && c_safe <= 1)) throw ValidationError("c_safe must lie in (0,1]");
  if (!(eps_grad > 0)) throw ValidationError("eps_grad must be > 0");
  if (max_steps < 1) throw ValidationError("max_steps must be >= 1");
}

double cfl_dt(const Field& f, const StepController& ctrl) {
  const int n = f.size();
  const double h = f.grid().h();
  double g = 0.0;
  for (int i = 0; i < n; ++i) {
    const double l = i > 0 ? f[i - 1] : f[0];
    const double r = i + 1 < n ? f[i + 1] : f.tail()(f.grid().x(n));
    g = std::max(g, std::abs(r - l) / (2 * h));
  }
  const Params& prm = f.params();
  const double scale = std::max(std::pow(g, prm.p - 2), ctrl.eps_grad);
  return ctrl.c_safe * std::pow(h, prm.sp()) / scale;
}

double drift_dt(const Field& f, const StepController& ctrl) {
  const double beta = exponents(f.params()).beta;
  return ctrl.c_safe * f.grid().h() / (beta * f.grid().R);
}

double admissible_dt(const Field& f, const OperatorValues& op, const StepController& ctrl,
                     FlowMode mode) {
  if (ctrl.rule == StepRule::gradient) {
    const double dt = cfl_dt(f, ctrl);
    return mode == FlowMode::rescaled ? std::min(dt, drift_dt(f, ctrl)) : dt;
  }
  const double beta = exponents(f.params()).beta;
  double D = 0.0;
  for (int i = 0; i < f.size(); ++i)
    D = std::max(D, op.diag[i] + (mode == FlowMode::rescaled ? beta * i : 0.0));
  const double dt = D > 0.0 ? ctrl.c_safe / D : kInf;
  return mode == FlowMode::rescaled ? std::min(dt, drift_dt(f, ctrl)) : dt;
}

double admissible_dt(const Field& f, const QuadConfig& cfg, const StepController& ctrl,
                     FlowMode mode) {
  const OperatorPlan plan(f.params(), f.grid(), cfg);
  return admissible_dt(f, plan.apply_with_diag(f), ctrl, mode);
}

namespace {

Field advanced(const Field& u, Eigen::VectorXd v, double t) {
  if (!v.allFinite())
    throw NumericalError("non-finite update at t = " + std::to_string(u.time()) +
                         " (step to " + std::to_string(t) + ")");
  const bool nonneg = u.nonnegative() && v.minCoeff() >= 0.0;
  return Field(u.params(), u.grid(), std::move(v), u.tail(), t, u.kind(), nonneg);
}

void check_step(double dt, double adm) {
  if (!(dt > 0)) throw ValidationError("time step must be > 0");
  if (dt > adm * (1 + 1e-12))
    throw ValidationError("time step " + std::to_string(dt) + " exceeds admissible " +
                          std::to_string(adm));
}

}  // namespace

Field heun_step(const OperatorPlan& plan, const Field& u, const Eigen::VectorXd& Lu, double dt) {
  const Field pred = advanced(u, u.values() - dt * Lu, u.time() + dt);
  const Eigen::VectorXd Lp = plan.apply(pred);
  return advanced(u, 0.5 * (u.values() + pred.values() - dt * Lp), u.time() + dt);
}

Field euler_rescaled(const Field& v, const Eigen::VectorXd& Lv, double dtau, RescaledTerms terms,
                     StepReport* report) {
  const int n = v.size();
  const Grid& g = v.grid();
  const double beta = exponents(v.params()).beta;
  const double ghost = v.tail()(g.x(n));
  Eigen::VectorXd w = v.values();
  if (terms.op) w -= dtau * Lv;
  if (terms.drift) {
    // face flux -beta y v, upwinded from the outside; zero at the origin
    for (int i = 0; i < n; ++i) {
      const double right = i + 1 < n ? v[i + 1] : ghost;
      w[i] += dtau * beta * ((i + 1) * right - i * v[i]);
    }
  }
  Field out = advanced(v, std::move(w), v.time() + dtau);
  if (report) {
    report->mass_before = mass(v);
    report->mass_after = mass(out);
    report->boundary_flux = terms.drift ? 2.0 * dtau * beta * g.R * ghost : 0.0;
    report->operator_flux = terms.op ? -2.0 * g.h() * dtau * Lv.sum() : 0.0;
  }
  return out;
}

Field step_cauchy(const Field& u, double dt, const QuadConfig& cfg, const StepController& ctrl,
                  bool refit) {
  if (u.kind() != TimeKind::physical)
    throw ValidationError("step_cauchy needs a physical-time field");
  ctrl.validate();
  const OperatorPlan plan(u.params(), u.grid(), cfg);
  const OperatorValues op = plan.apply_with_diag(u);
  check_step(dt, admissible_dt(u, op, ctrl, FlowMode::cauchy));
  Field out = heun_step(plan, u, op.value, dt);
  return refit ? refit_tail(out) : out;
}

Field step_rescaled(const Field& v, double dtau, const QuadConfig& cfg,
                    const StepController& ctrl, RescaledTerms terms, StepReport* report,
                    bool refit) {
  if (v.kind() != TimeKind::rescaled)
    throw ValidationError("step_rescaled needs a rescaled-time field");
  ctrl.validate();
  const OperatorPlan plan(v.params(), v.grid(), cfg);
  OperatorValues op;
  if (terms.op) {
    op = plan.apply_with_diag(v);
  } else {
    op.value = Eigen::VectorXd::Zero(v.size());
    op.diag = Eigen::VectorXd::Zero(v.size());
  }
  check_step(dtau, admissible_dt(v, op, ctrl, FlowMode::rescaled));
  Field out = euler_rescaled(v, op.value, dtau, terms, report);
  return refit ? refit_tail(out) : out;
}

SnapshotStats snapshot_stats(const Field& f, const OperatorPlan& plan, bool energy) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SnapshotStats s;
  s.time = f.time();
  auto guarded = [&](auto fn) {
    try {
      return fn();
    } catch (const NumericalError&) {
      return nan;
    }
  };
  s.mass = guarded([&] { return mass(f); });
  s.l1 = guarded([&] { return lq_norm(f, 1); });
  s.l2 = guarded([&] { return lq_norm(f, 2); });
  s.linf = linf_norm(f);
  s.energy = energy ? plan.energy(f) : nan;
  return s;
}

std::vector<Trajectory> evolve_coupled(const std::vector<Field>& u0, double t_end,
                                       const QuadConfig& cfg, const StepController& ctrl,
                                       FlowMode mode) {
  if (u0.empty()) throw ValidationError("evolve needs at least one field");
  ctrl.validate();
  const TimeKind want = mode == FlowMode::cauchy ? TimeKind::physical : TimeKind::rescaled;
  for (const Field& f : u0) {
    require_compatible(f, u0.front());
    if (f.kind() != want)
      throw ValidationError(std::string("field time kind ") + to_string(f.kind()) +
                            " does not match the flow mode");
    if (f.time() != u0.front().time()) throw ValidationError("coupled fields need equal times");
  }
  double t = u0.front().time();
  if (!(t_end > t)) throw ValidationError("t_end must exceed the field time stamp");

  const OperatorPlan plan(u0.front().params(), u0.front().grid(), cfg);
  const size_t K = u0.size();
  std::vector<Field> cur = u0;
  std::vector<Trajectory> out(K);
  for (size_t k = 0; k < K; ++k) {
    out[k].mode = mode;
    out[k].snapshots.push_back({cur[k], snapshot_stats(cur[k], plan, ctrl.record_energy)});
  }

  double next = ctrl.record.next_after(t);
  long steps = 0;
  bool exhausted = false;
  std::vector<OperatorValues> ops(K);
  while (t < t_end) {
    const double target = std::min(next, t_end);
    const double remaining = target - t;
    double dt = kInf;
    for (size_t k = 0; k < K; ++k) {
      ops[k] = plan.apply_with_diag(cur[k]);
      dt = std::min(dt, admissible_dt(cur[k], ops[k], ctrl, mode));
      if (mode == FlowMode::rescaled && ctrl.rule == StepRule::jacobian)
        dt = std::min(dt, drift_dt(cur[k], ctrl));
    }
    bool land = false;
    if (!(dt < remaining)) {
      dt = remaining;
      land = true;
    } else {
      dt = remaining / std::ceil(remaining / dt);
    }
    for (size_t k = 0; k < K; ++k) {
      Field nf = mode == FlowMode::cauchy ? heun_step(plan, cur[k], ops[k].value, dt)
                                          : euler_rescaled(cur[k], ops[k].value, dt, {});
      cur[k] = land ? nf.with_time(target) : nf;
    }
    t = land ? target : t + dt;
    ++steps;
    const bool at_record = land;
    if (at_record || steps >= ctrl.max_steps) {
      for (size_t k = 0; k < K; ++k) {
        cur[k] = refit_tail(cur[k]);
        out[k].snapshots.push_back({cur[k], snapshot_stats(cur[k], plan, ctrl.record_energy)});
      }
      if (at_record && target == next) next = ctrl.record.next_after(t);
    }
    if (steps >= ctrl.max_steps && t < t_end) {
      exhausted = true;
      break;
    }
  }
  for (auto& tr : out) {
    tr.steps = steps;
    tr.exhausted = exhausted;
  }
  return out;
}

Trajectory evolve(const Field& u0, double t_end, const QuadConfig& cfg, const StepController& ctrl,
                  FlowMode mode) {
  return evolve_coupled({u0}, t_end, cfg, ctrl, mode).front();
}

void write_trajectory_csv(const Trajectory& tr, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write " + path);
  os << "time,mass,l1,l2,linf,energy\n";
  for (const auto& s : tr.snapshots) {
    const auto& d = s.stats;
    os << fmt17(d.time) << "," << fmt17(d.mass) << "," << fmt17(d.l1) << "," << fmt17(d.l2)
       << "," << fmt17(d.linf) << "," << fmt17(d.energy) << "\n";
  }
}

void write_trajectory(const Trajectory& tr, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_trajectory_csv(tr, dir + "/trajectory.csv");
  char name[32];
  for (size_t k = 0; k < tr.snapshots.size(); ++k) {
    std::snprintf(name, sizeof name, "/snap_%04zu.field", k);
    write_checkpoint(dir + name, tr.snapshots[k].field);
  }
}

}  // namespace fplap
