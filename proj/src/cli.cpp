#include "fplap/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fplap/acceptance.hpp"
#include "fplap/closedforms.hpp"
#include "fplap/errors.hpp"
#include "fplap/field_io.hpp"
#include "fplap/scaling.hpp"
#include "fplap/shapes.hpp"

namespace fs = std::filesystem;

namespace fplap {

namespace {

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

std::string resolved_text(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "# fplap " << FPLAP_VERSION << "\n"
     << "command=" << c.command << "\n"
     << "s=" << join(c.s) << "\np=" << join(c.p) << "\nN=" << c.N << "\nmass=" << c.mass
     << "\ngrid-n=" << c.grid_n << "\ngrid-R=" << c.grid_R << "\nout=" << c.out
     << "\ncache=" << c.cache << "\nthreads=" << c.threads << "\nquick=" << c.quick
     << "\nseed=" << c.seed << "\ntol-scale=" << c.tol_scale << "\ntol=" << c.tol
     << "\ntau-max=" << c.tau_max << "\nsecond-shape=" << c.second_shape
     << "\nshape=" << c.shape << "\ninit=" << c.init << "\nmode=" << c.mode
     << "\nt-end=" << c.t_end << "\nrecord=" << c.record << "\nwidth=" << c.width
     << "\nc-safe=" << c.c_safe << "\nmax-steps=" << c.max_steps << "\nfamily=" << c.family
     << "\nr-min=" << c.r_min << "\nr-max=" << c.r_max << "\nsamples=" << c.samples
     << "\nt=" << c.t << "\nC=" << c.C << "\nk=" << c.k << "\nonly=" << join(c.only) << "\n";
  return os.str();
}

void write_resolved(const RunConfig& c) {
  fs::create_directories(c.out);
  std::ofstream os(fs::path(c.out) / "resolved_config.txt");
  if (!os) throw ValidationError("cannot write to output directory " + c.out);
  os << resolved_text(c);
}

Grid grid_of(const RunConfig& c) { return Grid(c.grid_R, c.quick ? std::min(c.grid_n, 256) : c.grid_n); }

std::string stem_of(const Params& prm) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "profile_s%g_p%g", prm.s, prm.p);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  if (s.empty() || p.empty()) throw ValidationError("--s and --p need at least one value");
  for (double v : s) Params(v, p.front(), N);
  for (double v : p) Params(s.front(), v, N);
  Grid(grid_R, grid_n);
  if (out.empty()) throw ValidationError("--out must not be empty");
  if (threads < 0) throw ValidationError("--threads must be >= 0");
  if (!(tol_scale > 0)) throw ValidationError("--tol-scale must be > 0");
  if (!(tol > 0) || !(tau_max > 0)) throw ValidationError("--tol and --tau-max must be > 0");
  if (!(t_end > 0) || !(record > 0) || !(width > 0))
    throw ValidationError("--t-end, --record and --width must be > 0");
  if (!(c_safe > 0 && c_safe <= 1)) throw ValidationError("--c-safe must lie in (0, 1]");
  if (max_steps < 1) throw ValidationError("--max-steps must be >= 1");
  if (!(r_min > 0 && r_max > r_min) || samples < 2)
    throw ValidationError("need 0 < r-min < r-max and samples >= 2");
  for (int id : only)
    if (id < 1 || id > kCriteria) throw ValidationError("--only ids must lie in 1..12");
}

int cmd_profile(const RunConfig& c) {
  write_resolved(c);
  ProfileOptions opt;
  opt.tol = c.tol;
  opt.tau_max = c.tau_max;
  opt.check_second_shape = c.second_shape;
  const Grid g = grid_of(c);
  for (double s : c.s)
    for (double p : c.p) {
      const Params prm(s, p, c.N);
      const Profile pr = compute_profile(prm, c.mass, g, opt);
      write_profile(pr, c.out, stem_of(prm));
      std::printf("s=%g p=%g mass=%g: tail slope %.4f (expected %.4f), F(0)=%.6g, tau=%g\n", s,
                  p, c.mass, pr.tail_fit.slope, -(c.N + prm.sp()), pr.field[0], pr.tau);
    }
  return kExitOk;
}

int cmd_evolve(const RunConfig& c) {
  write_resolved(c);
  const FlowMode mode = parse_mode(c.mode);
  Field u = [&] {
    if (!c.init.empty()) return read_checkpoint(c.init);
    const Params prm(c.s.front(), c.p.front(), c.N);
    if (c.shape == "zero") return zero_field(prm, grid_of(c));
    return make_shape(parse_shape(c.shape), prm, grid_of(c), c.mass, c.width);
  }();
  if (mode == FlowMode::rescaled && u.kind() == TimeKind::physical) {
    if (u.time() != 0) throw ValidationError("rescaled runs start from t = 0 or a rescaled checkpoint");
    u = to_selfsimilar(u);
  }
  StepController ctrl;
  ctrl.c_safe = c.c_safe;
  ctrl.max_steps = c.max_steps;
  ctrl.record = RecordSchedule::uniform(c.record);
  const Trajectory tr = evolve(u, c.t_end, {}, ctrl, mode);
  write_trajectory(tr, c.out);
  const auto& a = tr.snapshots.front().stats;
  const auto& b = tr.snapshots.back().stats;
  std::printf("%zu snapshots, %ld steps, mass %.10g -> %.10g, linf %.6g -> %.6g\n",
              tr.snapshots.size(), tr.steps, a.mass, b.mass, a.linf, b.linf);
  if (tr.exhausted) {
    std::fprintf(stderr, "step budget exhausted at t=%g\n", b.time);
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_limits(const RunConfig& c) {
  write_resolved(c);
  const std::string path = (fs::path(c.out) / ("limits_" + c.family + ".csv")).string();
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write " + path);
  const double p = c.p.front();
  auto radius = [&](int i) {
    return c.r_min * std::pow(c.r_max / c.r_min, double(i) / (c.samples - 1));
  };
  if (c.family == "riccati") {
    const RiccatiParams<double> rp{p, c.N, c.C};
    rp.validate();
    os << "r,F,dF,residual,U_t,U_t_residual\n";
    for (int i = 0; i < c.samples; ++i) {
      const double r = radius(i);
      const double F = riccati_profile(r, rp), dF = riccati_profile_derivative(r, rp);
      const double res = riccati_ode_residual(rp, std::vector<double>{r});
      const double U = riccati_solution(r, c.t, rp), Ut = riccati_solution_dt(r, c.t, rp);
      os << fmt17(r) << "," << fmt17(F) << "," << fmt17(dF) << "," << fmt17(res) << ","
         << fmt17(Ut) << "," << fmt17(std::abs(Ut + std::pow(U, p - 1))) << "\n";
    }
  } else if (c.family == "barenblatt") {
    const double edge = barenblatt_edge(p, c.C, c.k);
    os << "r,F,edge\n";
    for (int i = 0; i < c.samples; ++i) {
      const double r = edge * 1.25 * i / (c.samples - 1);
      os << fmt17(r) << "," << fmt17(barenblatt_profile(r, p, c.N, c.C, c.k)) << ","
         << fmt17(edge) << "\n";
    }
    std::printf("barenblatt support edge r=%.10g\n", edge);
  } else if (c.family == "cauchy-kernel") {
    // mass by Simpson on [0, X] plus the exact remainder beyond X
    const double X = c.r_max, t = c.t;
    const int m = 200000;
    double simpson = 0;
    for (int j = 0; j <= m; ++j) {
      const double w = (j == 0 || j == m) ? 1 : (j % 2 ? 4 : 2);
      simpson += w * cauchy_kernel(X * j / m, t, c.mass);
    }
    simpson *= X / (3.0 * m);
    const double total = 2 * simpson + 2 * c.mass * std::atan(t / X) / std::numbers::pi;
    os << "x,t,K,mass\n";
    for (int i = 0; i < c.samples; ++i) {
      const double x = -X + 2 * X * i / (c.samples - 1);
      os << fmt17(x) << "," << fmt17(t) << "," << fmt17(cauchy_kernel(x, t, c.mass)) << ","
         << fmt17(total) << "\n";
    }
  } else {
    throw ValidationError("unknown family '" + c.family + "' (riccati|barenblatt|cauchy-kernel)");
  }
  std::printf("wrote %s\n", path.c_str());
  return kExitOk;
}

int cmd_verify(const RunConfig& c) {
  write_resolved(c);
  ProfileCache cache(c.cache);
  AcceptanceOptions o;
  o.scale = c.quick ? Scale::quick : Scale::full;
  o.tol_scale = c.tol_scale;
  o.seed = c.seed;
  o.only = c.only;
  o.out_dir = c.out;
  o.cache = &cache;
  o.log = &std::cout;
  const auto res = run_acceptance(o);
  std::ofstream txt(fs::path(c.out) / "verify_report.txt"), csv(fs::path(c.out) / "verify_report.csv");
  csv << "criterion,name,pass,seconds,detail\n";
  bool all = true;
  for (const auto& r : res) {
    all = all && r.pass;
    txt << format_line(r) << "\n";
    std::string d = r.detail;
    for (char& ch : d)
      if (ch == '"') ch = '\'';
    csv << r.id << ",\"" << r.name << "\"," << (r.pass ? 1 : 0) << "," << r.seconds << ",\"" << d
        << "\"\n";
  }
  std::printf("%s: %zu criteria\n", all ? "all passed" : "FAILURES", res.size());
  return all ? kExitOk : kExitVerification;
}

int cmd_figures(const RunConfig& c) {
  write_resolved(c);
  ProfileCache cache(c.cache);
  ProfileOptions opt;
  opt.tol = c.tol;
  opt.tau_max = c.tau_max;
  const auto prs = emit_figures(c.out, grid_of(c), cache, opt);
  const auto set = figure_set();
  for (size_t k = 0; k < set.size(); ++k)
    std::printf("%-14s s=%g p=%g slope %.4f (expected %.4f) F(0)=%.5f flatness %.4f\n",
                set[k].stem.c_str(), set[k].params.s, set[k].params.p, prs[k]->tail_fit.slope,
                -(1 + set[k].params.sp()), prs[k]->field[0], flatness(prs[k]->field));
  return kExitOk;
}

int run_cli(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"fractional p-Laplacian evolution: profiles, flows, limits, verification"};
  app.set_version_flag("--version", std::string("fplap ") + FPLAP_VERSION);
  app.set_config("--config", "", "key=value file; flags override it");
  app.require_subcommand(1, 1);

  app.add_option("--s", c.s, "fractional order, comma list")->delimiter(',');
  app.add_option("--p", c.p, "p > 1, comma list")->delimiter(',');
  app.add_option("--N", c.N, "dimension (1 only)");
  app.add_option("--mass", c.mass);
  app.add_option("--grid-n", c.grid_n);
  app.add_option("--grid-R", c.grid_R);
  app.add_option("--out", c.out, "output directory");
  app.add_option("--cache", c.cache, "profile cache directory");
  app.add_option("--threads", c.threads, "OpenMP threads, 0 keeps the default");
  app.add_flag("--quick", c.quick, "reduced grids (n <= 256)");
  app.add_option("--seed", c.seed);
  app.add_option("--tol-scale", c.tol_scale, "multiplies verification tolerances");
  app.add_option("--tol", c.tol, "profile stationarity tolerance");
  app.add_option("--tau-max", c.tau_max);
  app.add_flag("--second-shape", c.second_shape);
  app.add_option("--shape", c.shape, "box|triangle|two-bump|dirac-box|zero");
  app.add_option("--init", c.init, "checkpoint to start from");
  app.add_option("--mode", c.mode, "cauchy|rescaled");
  app.add_option("--t-end", c.t_end);
  app.add_option("--record", c.record, "snapshot spacing");
  app.add_option("--width", c.width);
  app.add_option("--c-safe", c.c_safe);
  app.add_option("--max-steps", c.max_steps);
  app.add_option("--family", c.family, "riccati|barenblatt|cauchy-kernel");
  app.add_option("--r-min", c.r_min);
  app.add_option("--r-max", c.r_max);
  app.add_option("--samples", c.samples);
  app.add_option("--t", c.t);
  app.add_option("--C", c.C);
  app.add_option("--k", c.k);
  app.add_option("--only", c.only, "criterion ids, comma list")->delimiter(',');

  for (const char* name : {"profile", "evolve", "limits", "verify", "figures"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    c.validate();
#ifdef _OPENMP
    if (c.threads > 0) omp_set_num_threads(c.threads);
#endif
    if (c.command == "profile") return cmd_profile(c);
    if (c.command == "evolve") return cmd_evolve(c);
    if (c.command == "limits") return cmd_limits(c);
    if (c.command == "verify") return cmd_verify(c);
    return cmd_figures(c);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}

}  // namespace fplap
