#include "fplap/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "fplap/barrier.hpp"
#include "fplap/closedforms.hpp"
#include "fplap/errors.hpp"
#include "fplap/scaling.hpp"
#include "fplap/shapes.hpp"

namespace fs = std::filesystem;

namespace fplap {

namespace {

// pinned tolerances, one per criterion
constexpr double kTolExponents = 1e-12;
constexpr double kTolRiccati = 1e-10;
constexpr double kTolLinear = 0.03;
constexpr double kTolMass = 1e-3;
constexpr double kTolSlope = 0.15;
constexpr double kTolSmoothing = 0.10;
constexpr double kTolDissipation = 0.10;
constexpr double kThrConvergence = 0.05;
constexpr double kTolScaling = 0.02;
constexpr double kHarnackRatio = 20.0;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Setup {
  Grid grid;
  bool quick;
};

Setup setup(const AcceptanceOptions& o) {
  const bool q = o.scale == Scale::quick;
  return {Grid(40.0, q ? 256 : 1024), q};
}

ProfileCache& cache_of(const AcceptanceOptions& o, std::unique_ptr<ProfileCache>& own) {
  if (o.cache) return *o.cache;
  own = std::make_unique<ProfileCache>();
  return *own;
}

using Body = std::function<void(CriterionResult&, const AcceptanceOptions&, ProfileCache&)>;

void exponent_algebra(CriterionResult& r, const AcceptanceOptions& o, ProfileCache&) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> us(0.05, 0.95), up(2.0, 8.0);
  std::uniform_int_distribution<int> un(1, 3);
  double worst = 0;
  for (int k = 0; k < 10000; ++k) {
    const double s = us(rng), p = up(rng);
    const int N = un(rng);
    const Exponents e = exponents_of<double>(s, p, N);
    worst = std::max(worst, std::abs(e.alpha + 1 - ((p - 1) * e.alpha + e.beta * s * p)));
    worst = std::max(worst, std::abs(e.alpha - N * e.beta));
  }
  const double tol = kTolExponents * o.tol_scale;
  r.pass = worst <= tol;
  r.detail = "max identity error " + fmt(worst) + " over 10^4 draws (tol " + fmt(tol) + ")";
}

void closed_forms(CriterionResult& r, const AcceptanceOptions& o, ProfileCache&) {
  std::mt19937_64 rng(o.seed + 1);
  std::uniform_real_distribution<double> up(2.2, 6.0), uc(0.1, 10.0), ulr(-2.0, 1.0),
      ut(0.01, 5.0);
  std::uniform_int_distribution<int> un(1, 3);
  double ode = 0, evo = 0;
  for (int k = 0; k < 1000; ++k) {
    RiccatiParams<double> rp{up(rng), un(rng), uc(rng)};
    const double x = std::pow(10.0, ulr(rng)), t = ut(rng);
    ode = std::max(ode, riccati_ode_residual(rp, std::vector<double>{x}));
    const double U = riccati_solution(x, t, rp);
    evo = std::max(evo, std::abs(riccati_solution_dt(x, t, rp) + std::pow(U, rp.p - 1)));
  }
  const double tol = kTolRiccati * o.tol_scale;
  r.pass = ode <= tol && evo <= tol;
  r.detail = "profile ODE residual " + fmt(ode) + ", U_t + U^{p-1} residual " + fmt(evo) +
             " at 10^3 samples (tol " + fmt(tol) + ")";
}

void linear_oracle(CriterionResult& r, const AcceptanceOptions& o, ProfileCache&) {
  const Setup su = setup(o);
  const Params prm(0.5, 2.0);
  const Grid& g = su.grid;
  Eigen::VectorXd v(g.n);
  for (int i = 0; i < g.n; ++i) v[i] = cauchy_kernel(g.x(i), 0.5);
  // kernel tail t / (pi x^2)
  Field u(prm, g, v, TailModel{0.5 / std::numbers::pi, 2.0}, 0.0, TimeKind::physical, true);
  // L = pi (-Delta)^{1/2} at s = 1/2, p = 2, so kernel time 1 is flow time 1/pi
  const double T = 1.0 / std::numbers::pi;
  StepController c;
  c.record = RecordSchedule::list({T});
  const Trajectory tr = evolve(u, T, {}, c);
  double err = 0, top = 0;
  for (int i = 0; i < g.n && g.x(i) <= 5.0; ++i) {
    const double K = cauchy_kernel(g.x(i), 1.5);
    err = std::max(err, std::abs(tr.last()[i] - K));
    top = std::max(top, K);
  }
  const double tol = kTolLinear * o.tol_scale;
  r.pass = err / top <= tol;
  r.detail = "relative Linf error on |x|<=5: " + fmt(err / top) + " (tol " + fmt(tol) +
             ", n=" + std::to_string(g.n) + ")";
}

void mass_conservation(CriterionResult& r, const AcceptanceOptions& o, ProfileCache&) {
  const Setup su = setup(o);
  const Params prm(0.5, 4.0);
  StepController c;
  c.record = RecordSchedule::uniform(0.1);
  c.record_energy = false;
  const Trajectory tr = evolve(box(prm, su.grid, 1.0), 1.0, {}, c);
  const CheckReport rep = mass_drift_check(tr, kTolMass * o.tol_scale);
  r.pass = rep.pass;
  r.detail = "max relative drift " + fmt(rep.value("max_rel_drift")) + " over t in [0,1] (tol " +
             fmt(rep.tolerance) + ")";
}

void tail_exponent(CriterionResult& r, const AcceptanceOptions& o, ProfileCache& cache) {
  const Setup su = setup(o);
  std::ostringstream os;
  r.pass = true;
  for (double p : {4.0, 3.0}) {
    const Params prm(0.5, p);
    const Profile& pr = cache.get(prm, su.grid);
    const double want = -(1 + prm.sp());
    const bool ok = std::abs(pr.tail_fit.slope - want) <= kTolSlope * o.tol_scale;
    r.pass = r.pass && ok;
    os << "p=" << p << " slope " << fmt(pr.tail_fit.slope) << " vs " << fmt(want) << "; ";
  }
  os << "tol " << fmt(kTolSlope * o.tol_scale);
  r.detail = os.str();
}

void smoothing(CriterionResult& r, const AcceptanceOptions& o, ProfileCache&) {
  const Setup su = setup(o);
  const Params prm(0.5, 4.0);
  StepController c;
  c.record = RecordSchedule::geometric(0.01, 10);
  c.record_energy = false;
  const Trajectory tr = evolve(dirac_box(prm, su.grid, 1.0), 30.0, {}, c);
  const CheckReport rep = smoothing_fit(tr, 1.0, 30.0, kTolSmoothing * o.tol_scale);
  r.pass = rep.pass;
  r.detail = "fitted slope " + fmt(rep.value("slope")) + " vs " + fmt(rep.value("expected")) +
             " on t in [1,30], C_fit " + fmt(rep.value("C_fit")) + " (tol " +
             fmt(rep.tolerance) + " relative)";
}

void dissipation(CriterionResult& r, const AcceptanceOptions& o, ProfileCache&) {
  const Setup su = setup(o);
  const Params prm(0.5, 4.0);
  const Field a = smooth_bump(prm, su.grid, 1.0, 0.75), b = smooth_bump(prm, su.grid, 1.0, 2.0);
  StepController c;
  c.record = RecordSchedule::uniform(0.01);
  c.record_energy = false;
  const auto tr = evolve_coupled({a, b}, 1.0, {}, c);
  const CheckReport rep = dissipation_check(tr[0], tr[1], {}, kTolDissipation * o.tol_scale);
  const bool strict = rep.value("strictly_decreasing") == 1.0;
  r.pass = rep.pass && strict;
  r.detail = "J " + fmt(rep.value("J0")) + " -> " + fmt(rep.value("J_end")) +
             (strict ? ", strictly decreasing" : ", NOT strictly decreasing") +
             "; worst dJ/integral " + fmt(rep.value("min_ratio")) + ", total " +
             fmt(rep.value("total_drop")) + "/" + fmt(rep.value("total_integral")) +
             " (tol " + fmt(rep.tolerance) + ")";
  if (!rep.violation.empty()) r.detail += "; " + rep.violation;
}

void attraction(CriterionResult& r, const AcceptanceOptions& o, ProfileCache& cache) {
  const Setup su = setup(o);
  const Params prm(0.5, 4.0);
  const Profile& pr = cache.get(prm, su.grid);
  StepController c;
  c.record = RecordSchedule::uniform(5.0);
  c.record_energy = false;
  const Trajectory tr = evolve(make_shape(Shape::two_bump, prm, su.grid, 1.0, 0.5), 50.0, {}, c);
  ConvergenceOptions co;
  co.thr_l1 = co.thr_linf = kThrConvergence * o.tol_scale;
  const CheckReport rep = convergence_to_fundamental(tr, pr, co);
  r.pass = rep.pass;
  r.detail = "t=50: l1 " + fmt(rep.value("l1_final")) + " (< " + fmt(rep.value("l1_threshold")) +
             "), t^a linf " + fmt(rep.value("linf_scaled_final")) + " (< " +
             fmt(rep.value("linf_threshold")) + "), monotone over last 5: " +
             (rep.value("monotone_last") == 1.0 ? "yes" : "no");
}

void barrier_certificate(CriterionResult& r, const AcceptanceOptions& o, ProfileCache&) {
  const Setup su = setup(o);
  const Params prm(0.5, 3.0);
  const Barrier b = build_barrier(prm, 2.0, 2.0, Epsilons::all(0.1));
  const InequalityCheck ic = check_inequalities(b);
  const SupersolutionReport outer = supersolution_residual(b, dyadic_samples(b, 3));
  const SupersolutionReport inner = supersolution_residual(b, {0.0, 0.5 * b.R});
  StepController c;
  c.record = RecordSchedule::uniform(0.25);
  c.record_energy = false;
  const Field v0 = to_selfsimilar(box(prm, su.grid, 1.0));
  const Trajectory tr = evolve(v0, su.quick ? 2.0 : 4.0, {}, c, FlowMode::rescaled);
  const CheckReport dom = barrier_domination_check(tr, b);
  double worst = 1e300;
  for (const auto& s : outer.samples) worst = std::min(worst, s.residual);
  r.pass = ic.pass && outer.pass && inner.pass && dom.pass;
  r.detail = "R1=" + fmt(b.R1) + " C1=" + fmt(b.C1) + "; inequalities " +
             (ic.pass ? "hold" : "FAIL") + ", min dyadic residual " + fmt(worst) +
             ", inner " + (inner.pass ? "ok" : "FAIL") + ", dominated at " +
             fmt(dom.value("snapshots") - dom.value("violations")) + "/" +
             fmt(dom.value("snapshots")) + " snapshots";
}

void harnack(CriterionResult& r, const AcceptanceOptions& o, ProfileCache& cache) {
  const Setup su = setup(o);
  const Params prm(0.5, 3.0);
  const Profile& pr = cache.get(prm, su.grid);
  StepController c;
  c.record = RecordSchedule::uniform(1.0);
  c.record_energy = false;
  const Trajectory tr = evolve(box(prm, su.grid, 1.0), 20.0, {}, c);
  const HarnackConstants hc = bisect_harnack(tr, pr, 1.0);
  const CheckReport sw = harnack_sandwich(tr, pr, hc.M1, hc.M2, hc.c2, 1.0);
  const CheckReport tw = harnack_tail_window(tr, 1.0, kHarnackRatio * o.tol_scale);
  r.pass = sw.pass && tw.pass && hc.M1 <= 1.0 && hc.M2 >= 1.0;
  r.detail = "M1=" + fmt(hc.M1) + " M2=" + fmt(hc.M2) + " c2=" + fmt(hc.c2) + " sandwich " +
             (sw.pass ? "holds" : "FAILS") + " on t in [1,20]; tail window C1=" +
             fmt(tw.value("C1")) + " C2=" + fmt(tw.value("C2")) + " ratio " +
             fmt(tw.value("ratio")) + " (max " + fmt(tw.tolerance) + ")";
  if (!sw.pass) r.detail += "; " + sw.violation;
}

void scaling_group(CriterionResult& r, const AcceptanceOptions& o, ProfileCache&) {
  const Setup su = setup(o);
  const Params prm(0.5, 4.0);
  const double k = 2.0, T = 4.0;
  const Field u0 = box(prm, su.grid, 1.0);
  StepController c;
  c.record_energy = false;
  c.record = RecordSchedule::list({T});
  const Field a = scale_solution_k(evolve(u0, T, {}, c).last(), k);
  const Field w0 = scale_solution_k(u0, k).with_time(0.0);
  c.record = RecordSchedule::list({a.time()});
  const Field b = evolve(w0, a.time(), {}, c).last();
  const double d = relative_l1(b, a);
  const double tol = kTolScaling * o.tol_scale;
  r.pass = d <= tol;
  r.detail = "relative L1 between evolve(T2 u0) and T2 evolve(u0) at t=" + fmt(a.time()) + ": " +
             fmt(d) + " (tol " + fmt(tol) + ")";
}

void figures(CriterionResult& r, const AcceptanceOptions& o, ProfileCache& cache) {
  const Setup su = setup(o);
  const std::string dir = (fs::path(o.out_dir) / "figures").string();
  const auto prs = emit_figures(dir, su.grid, cache);
  const auto set = figure_set();
  std::ostringstream os;
  bool ok = true;
  int files = 0;
  for (const auto& f : set)
    for (const char* suf : {".csv", "_loglog.csv"})
      files += fs::exists(fs::path(dir) / (f.stem + suf));
  if (files != 12) ok = false;
  os << files << "/12 csv files; ";
  std::vector<double> flat;
  for (size_t k = 0; k < set.size(); ++k) {
    const Field& F = prs[k]->field;
    const bool pos = F.values().minCoeff() > 0.0;
    const bool even = F.value_at(-1.0) == F.value_at(1.0) && F.value_at(-3.3) == F.value_at(3.3);
    const bool mono = radial_monotone_check(F).pass;
    const double want = -(1 + F.params().sp());
    const bool slope = std::abs(prs[k]->tail_fit.slope - want) <= kTolSlope * o.tol_scale;
    ok = ok && pos && even && mono && slope;
    if (set[k].family == "p") flat.push_back(flatness(F));
    os << set[k].stem << " slope " << fmt(prs[k]->tail_fit.slope);
    if (!(pos && even && mono)) os << " [shape check failed]";
    os << "; ";
  }
  const bool flat_ok = flat.size() == 3 && flat[0] < flat[1] && flat[1] < flat[2];
  ok = ok && flat_ok;
  os << "flatness p=3,4,6: " << fmt(flat[0]) << " " << fmt(flat[1]) << " " << fmt(flat[2]);
  r.pass = ok;
  r.detail = os.str();
}

struct Entry {
  const char* name;
  Body body;
};

const std::vector<Entry>& table() {
  static const std::vector<Entry> t = {
      {"exponent algebra", exponent_algebra},
      {"closed-form residuals", closed_forms},
      {"linear oracle", linear_oracle},
      {"mass conservation", mass_conservation},
      {"profile tail exponent", tail_exponent},
      {"smoothing exponent", smoothing},
      {"Lyapunov functional and dissipation", dissipation},
      {"attraction to the fundamental solution", attraction},
      {"barrier certificate", barrier_certificate},
      {"global Harnack sandwich", harnack},
      {"scaling-group invariance", scaling_group},
      {"figure reproduction", figures},
  };
  return t;
}

}  // namespace

std::string ProfileCache::stem(const Params& prm, const Grid& grid) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "profile_s%g_p%g_R%g_n%d", prm.s, prm.p, grid.R, grid.n);
  return buf;
}

const Profile& ProfileCache::get(const Params& prm, const Grid& grid, const ProfileOptions& opt) {
  const auto key = std::make_tuple(prm.s, prm.p, grid.R, grid.n);
  auto it = mem_.find(key);
  if (it != mem_.end()) return *it->second;
  const std::string st = stem(prm, grid);
  std::unique_ptr<Profile> pr;
  if (!dir_.empty() && fs::exists(fs::path(dir_) / (st + ".field"))) {
    try {
      Profile got = read_profile(dir_, st);
      if (got.field.grid() == grid && got.params().s == prm.s && got.params().p == prm.p)
        pr = std::make_unique<Profile>(std::move(got));
    } catch (const Error&) {
      // unreadable cache entry; recompute below
    }
  }
  if (!pr) {
    pr = std::make_unique<Profile>(compute_profile(prm, 1.0, grid, opt));
    if (!dir_.empty()) {
      fs::create_directories(dir_);
      write_profile(*pr, dir_, st);
    }
  }
  return *mem_.emplace(key, std::move(pr)).first->second;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  if (id < 1 || id > kCriteria) throw ValidationError("criterion id must be in 1..12");
  std::unique_ptr<ProfileCache> own;
  ProfileCache& cache = cache_of(opt, own);
  const Entry& e = table()[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = e.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    e.body(r, opt, cache);
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  std::unique_ptr<ProfileCache> own;
  AcceptanceOptions o = opt;
  o.cache = &cache_of(opt, own);
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), id) == o.only.end()) continue;
    out.push_back(run_criterion(id, o));
    if (o.log) *o.log << format_line(out.back()) << std::endl;
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s criterion %2d %-40s %7.1fs  ", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

std::vector<FigureProfile> figure_set() {
  std::vector<FigureProfile> v;
  for (double p : {3.0, 4.0, 6.0}) v.push_back({"p", Params(0.5, p), "fig_p_p" + fmt(p)});
  for (double s : {0.3, 0.5, 0.8}) v.push_back({"s", Params(s, 4.0), "fig_s_s" + fmt(s)});
  return v;
}

std::vector<const Profile*> emit_figures(const std::string& dir, const Grid& grid,
                                         ProfileCache& cache, const ProfileOptions& opt) {
  fs::create_directories(dir);
  std::vector<const Profile*> out;
  for (const auto& f : figure_set()) {
    const Profile& pr = cache.get(f.params, grid, opt);
    write_profile(pr, dir, f.stem);
    out.push_back(&pr);
  }
  return out;
}

double flatness(const Field& F) {
  const double F0 = F.value_at(0.0);
  if (!(F0 > 0)) throw ValidationError("flatness needs F(0) > 0");
  const Grid& g = F.grid();
  int i = 0;
  while (i < g.n && F[i] > 0.5 * F0) ++i;
  if (i == 0 || i == g.n) throw NumericalError("half-maximum radius not on the grid");
  // linear crossing between nodes i-1 and i
  const double x0 = g.x(i - 1), x1 = g.x(i);
  const double l = x0 + (F[i - 1] - 0.5 * F0) / (F[i - 1] - F[i]) * (x1 - x0);
  return F.value_at(0.5 * l) / F0;
}

}  // namespace fplap
