#include "fplap/profile.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fplap/field_io.hpp"
#include "fplap/norms.hpp"

namespace fplap {

TailFit fit_tail(const Field& f, double lo, double hi) {
  const Grid& g = f.grid();
  if (!(0 < lo && lo < hi && hi <= 1)) throw ValidationError("bad tail window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.x(i);
    if (x < lo * g.R || x > hi * g.R) continue;
    if (!(f[i] > 0))
      throw ValidationError("nonpositive value " + std::to_string(f[i]) + " at r = " +
                            std::to_string(x) + " inside the tail window");
    const double lx = std::log(x), ly = std::log(f[i]);
    pts.emplace_back(lx, ly);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) throw ValidationError("tail window holds fewer than two nodes");
  TailFit t;
  t.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icpt = (sy - t.slope * sx) / m;
  t.coefficient = std::exp(icpt);
  t.r_lo = lo * g.R;
  t.r_hi = hi * g.R;
  double ss = 0;
  for (auto [lx, ly] : pts) ss += std::pow(ly - icpt - t.slope * lx, 2);
  t.rms = std::sqrt(ss / m);
  return t;
}

namespace {

std::string fmt_sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

double l1_distance(const Field& a, const Field& b) {
  const Grid& g = a.grid();
  double d = 2.0 * g.h() * (a.values() - b.values()).cwiseAbs().sum();
  const double dc = std::abs(a.tail().C - b.tail().C);
  if (dc > 0 && a.tail().q > 1) d += 2.0 * dc * std::pow(g.R, 1 - a.tail().q) / (a.tail().q - 1);
  return d;
}

struct RunResult {
  Field v;
  std::vector<double> hist;
  double tau;
  long steps;
};

RunResult run_to_stationarity(const Params& prm, double M, const Grid& grid,
                              const ProfileOptions& opt, Shape shape) {
  Field u0 = make_shape(shape, prm, grid, M, 1.0);
  Field v = u0.with_time(0.0, TimeKind::rescaled);
  StepController ctrl = opt.ctrl;
  ctrl.record_energy = false;
  RunResult r{v, {}, 0.0, 0};
  double prev_res = -1;
  for (int k = 1;; ++k) {
    const double tau_next = k * opt.check_interval;
    if (tau_next > opt.tau_max + 1e-12) {
      std::string hist;
      for (size_t j = r.hist.size() > 8 ? r.hist.size() - 8 : 0; j < r.hist.size(); ++j)
        hist += " " + fmt_sci(r.hist[j]);
      throw NumericalError("profile did not reach stationarity by tau = " +
                           std::to_string(opt.tau_max) + "; last residuals:" + hist);
    }
    ctrl.record = RecordSchedule::list({tau_next});
    Trajectory tr = evolve(r.v, tau_next, opt.quad, ctrl, FlowMode::rescaled);
    r.steps += tr.steps;
    // the truncated system leaks mass at a tiny constant rate; project back onto mass M
    Field nv = tr.last();
    const double m = mass(nv);
    if (m > 0) {
      TailModel t = nv.tail();
      t.C *= M / m;
      nv = Field(prm, grid, nv.values() * (M / m), t, nv.time(), nv.kind(), nv.nonnegative());
    }
    const double res = l1_distance(nv, r.v) / opt.check_interval;
    r.hist.push_back(res);
    r.v = nv;
    r.tau = tau_next;
    // stop once the residual and its geometric remainder res/lambda are both below tol
    if (res < opt.tol && prev_res > 0) {
      const double lambda = std::log(prev_res / res) / opt.check_interval;
      if (res < 1e-2 * opt.tol || (lambda > 0 && res / lambda < opt.tol)) break;
    }
    prev_res = res;
  }
  return r;
}

Field scaled_by_mass(const Field& F, double lambda) {
  const Params& prm = F.params();
  const Exponents e = exponents(prm);
  const double amp = std::pow(lambda, prm.sp() * e.beta);
  const double stretch = std::pow(lambda, -(prm.p - 2) * e.beta);
  const Grid& g = F.grid();
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = amp * F.value_at(stretch * g.x(i));
  TailModel t = F.tail();
  t.C *= amp * std::pow(stretch, -t.q);
  return Field(prm, g, v, t, F.time(), F.kind(), F.nonnegative());
}

}  // namespace

Profile compute_profile(const Params& prm, double M, const Grid& grid, const ProfileOptions& opt) {
  if (!(M > 0)) throw ValidationError("profile mass must be > 0");
  if (!(opt.tol > 0)) throw ValidationError("stationarity tolerance must be > 0");
  if (!(prm.p > 2)) throw ValidationError("profiles need p > 2");
  RunResult r = run_to_stationarity(prm, M, grid, opt, opt.shape);
  Profile pr{r.v, M, mass(r.v), {}, r.hist.back(), r.hist, r.tau, r.steps, -1};
  if (opt.check_second_shape) {
    const Shape other = opt.shape == Shape::triangle ? Shape::box : Shape::triangle;
    RunResult r2 = run_to_stationarity(prm, M, grid, opt, other);
    pr.shape_gap = l1_distance(r.v, r2.v);
  }
  pr.tail_fit = fit_tail(pr.field);
  return pr;
}

Field rescale_profile_mass(const Profile& pr, double M) {
  if (!(M > 0)) throw ValidationError("mass must be > 0");
  return scaled_by_mass(pr.field, M / pr.mass);
}

double eval_fundamental(const Profile& pr, double x, double t, double M) {
  if (!(t > 0)) throw ValidationError("fundamental solution needs t > 0");
  if (M == 0) return 0.0;
  if (M < 0) return -eval_fundamental(pr, x, t, -M);
  const Params& prm = pr.params();
  const Exponents e = exponents(prm);
  const double lambda = M / pr.mass;
  const double amp = std::pow(lambda, prm.sp() * e.beta) * std::pow(t, -e.alpha);
  const double y = std::pow(lambda, -(prm.p - 2) * e.beta) * x * std::pow(t, -e.beta);
  return amp * pr.field.value_at(y);
}

double eval_fundamental(const Profile& pr, double x, double t) {
  return eval_fundamental(pr, x, t, pr.mass);
}

Field fundamental_field(const Profile& pr, const Grid& grid, double t, double M) {
  if (!(t > 0)) throw ValidationError("fundamental solution needs t > 0");
  const Params& prm = pr.params();
  const Exponents e = exponents(prm);
  Eigen::VectorXd v(grid.n);
  for (int i = 0; i < grid.n; ++i) v[i] = eval_fundamental(pr, grid.x(i), t, M);
  const double lambda = std::abs(M) / pr.mass;
  TailModel tail = pr.field.tail();
  tail.C *= (M < 0 ? -1.0 : 1.0) * std::pow(lambda, prm.sp() * e.beta + (prm.p - 2) * e.beta * tail.q) *
            std::pow(t, e.beta * tail.q - e.alpha);
  return Field(prm, grid, v, tail, t, TimeKind::physical, M >= 0);
}

ProfileResidual profile_residual(const Field& F, const QuadConfig& cfg) {
  const Grid& g = F.grid();
  const double beta = exponents(F.params()).beta;
  const Eigen::VectorXd L = apply_operator(F, cfg);
  const int n = g.n, m = n - n / 10;
  double num = 0, den = 0;
  for (int i = 0; i < m; ++i) {
    // y F is odd: mirror node -x_0 carries -x_0 F_0
    const double ym = i > 0 ? g.x(i - 1) * F[i - 1] : -g.x(0) * F[0];
    const double yp = i + 1 < n ? g.x(i + 1) * F[i + 1] : g.x(n) * F.tail()(g.x(n));
    const double drift = beta * (yp - ym) / (2 * g.h());
    num += std::abs(L[i] - drift);
    den += std::abs(drift);
  }
  if (den == 0) return {0.0, true};
  return {num / den, false};
}

void write_profile(const Profile& pr, const std::string& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  const std::string base = dir + "/" + stem;
  const Grid& g = pr.field.grid();
  {
    std::ofstream os(base + ".csv");
    if (!os) throw ValidationError("cannot write " + base + ".csv");
    os << "r,F\n";
    for (int i = 0; i < g.n; ++i) os << fmt17(g.x(i)) << "," << fmt17(pr.field[i]) << "\n";
  }
  {
    std::ofstream os(base + "_loglog.csv");
    os << "log_r,log_F\n";
    for (int i = 0; i < g.n; ++i)
      if (pr.field[i] > 0)
        os << fmt17(std::log(g.x(i))) << "," << fmt17(std::log(pr.field[i])) << "\n";
  }
  write_checkpoint(base + ".field", pr.field);
  nlohmann::ordered_json j;
  const Params& p = pr.params();
  j["s"] = p.s;
  j["p"] = p.p;
  j["N"] = p.N;
  j["R"] = g.R;
  j["n"] = g.n;
  j["mass"] = pr.mass;
  j["measured_mass"] = pr.measured_mass;
  j["residual"] = pr.residual;
  j["residual_history"] = pr.residual_history;
  j["tau"] = pr.tau;
  j["steps"] = pr.steps;
  j["shape_gap"] = pr.shape_gap;
  j["tail_fit"] = {{"slope", pr.tail_fit.slope},
                   {"coefficient", pr.tail_fit.coefficient},
                   {"r_lo", pr.tail_fit.r_lo},
                   {"r_hi", pr.tail_fit.r_hi},
                   {"rms", pr.tail_fit.rms}};
  j["expected_slope"] = -(p.N + p.sp());
  std::ofstream os(base + ".json");
  os << j.dump(2) << "\n";
}

Profile read_profile(const std::string& dir, const std::string& stem) {
  const std::string base = dir + "/" + stem;
  Field f = read_checkpoint(base + ".field");
  std::ifstream is(base + ".json");
  if (!is) throw ValidationError("cannot open " + base + ".json");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw ValidationError("bad profile metadata: " + std::string(e.what()));
  }
  Profile pr{f, j.at("mass").get<double>(), j.at("measured_mass").get<double>(), {},
             j.at("residual").get<double>(), j.at("residual_history").get<std::vector<double>>(),
             j.at("tau").get<double>(), j.at("steps").get<long>(), j.at("shape_gap").get<double>()};
  pr.tail_fit = fit_tail(f);
  return pr;
}

}  // namespace fplap
