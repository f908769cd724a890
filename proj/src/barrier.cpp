#include "fplap/barrier.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fplap/field_io.hpp"

namespace fplap {

namespace {

const char* kIneqNames[4] = {"A^{p-2} <= e1 R1^{sp}", "C2^{p-2} <= e4 R^{N(p-2)} R1^{sp}",
                             "C2^{p-2} <= e2 R^N R1^{g'-N+sp(p-3)}",
                             "C2^{p-2} <= e3 R1^{g1+sp(p-2)}"};

void check_params(const Params& prm) {
  if (!(prm.p > 2)) throw ValidationError("barrier needs p > 2");
  if (!(prm.sp() < 2)) throw ValidationError("barrier certificate unsupported for sp >= 2");
}

// grid with a node at r (r > 0) and radius at least Rg
Grid grid_through(double r, double h_target, double Rg, int* node) {
  int i = 0;
  double h = h_target;
  if (r > 0) {
    i = std::max(0, int(std::lround(r / h_target - 0.5)));
    h = r / (i + 0.5);
  }
  const double n = std::ceil(Rg / h);
  if (n > 1 << 22) throw ValidationError("sample grid too large");
  *node = i;
  return Grid(n * h, int(n));
}

}  // namespace

InequalityCheck check_inequalities(const Params& prm, double A, double C2, double R, double R1,
                                   const Epsilons& eps) {
  const double N = prm.N, p = prm.p, sp = prm.sp();
  const double gp = (N + sp) * (p - 1) + sp;
  const double g1 = N * (p - 2) + p * prm.s * (p - 1);
  const double lA = std::log(A), lC = std::log(C2), lR = std::log(R), lR1 = std::log(R1);
  InequalityCheck c;
  c.lhs = {(p - 2) * lA, (p - 2) * lC, (p - 2) * lC, (p - 2) * lC};
  c.rhs = {std::log(eps.e1) + sp * lR1, std::log(eps.e4) + N * (p - 2) * lR + sp * lR1,
           std::log(eps.e2) + N * lR + (gp - N + sp * (p - 3)) * lR1,
           std::log(eps.e3) + (g1 + sp * (p - 2)) * lR1};
  c.pass = true;
  for (int k = 0; k < 4; ++k) {
    if (c.lhs[k] > c.rhs[k]) c.pass = false;
    if (c.margin(k) < c.margin(c.binding)) c.binding = k;
  }
  return c;
}

Barrier build_barrier(const Params& prm, double A, double C2, const Epsilons& eps, double R1_cap) {
  check_params(prm);
  if (!(A > 0 && C2 > 0)) throw ValidationError("barrier needs A, C2 > 0");
  for (double e : {eps.e1, eps.e2, eps.e3, eps.e4})
    if (!(e > 0 && e <= 1)) throw ValidationError("epsilons must lie in (0,1]");
  Barrier b;
  b.params = prm;
  b.A = A;
  b.C2 = C2;
  b.eps = eps;
  b.R = std::pow(C2 / A, 1.0 / prm.N);
  b.gamma_prime = (prm.N + prm.sp()) * (prm.p - 1) + prm.sp();
  b.gamma1 = prm.N * (prm.p - 2) + prm.p * prm.s * (prm.p - 1);
  double R1 = std::exp2(std::floor(std::log2(b.R)) + 1);
  while (R1 <= b.R) R1 *= 2;
  for (;; R1 *= 2) {
    const InequalityCheck c = check_inequalities(prm, A, C2, b.R, R1, eps);
    if (c.pass) break;
    if (R1 * 2 > R1_cap) {
      int k = 0;
      while (c.lhs[k] <= c.rhs[k]) ++k;
      throw NumericalError(std::string("no admissible R1 below the cap; binding inequality: ") +
                           kIneqNames[k]);
    }
  }
  b.R1 = R1;
  b.C1 = C2 * std::pow(R1, prm.sp());
  return b;
}

double eval_barrier(const Barrier& b, double r) {
  r = std::abs(r);
  if (r <= b.R) return b.A;
  if (r <= b.R1) return b.C2 * std::pow(r, -b.params.N);
  return b.C1 * std::pow(r, -(b.params.N + b.params.sp()));
}

Field barrier_field(const Barrier& b, const Grid& grid) {
  if (!(grid.R > b.R1)) throw ValidationError("grid must extend past R1 for the barrier tail");
  Eigen::VectorXd v(grid.n);
  for (int i = 0; i < grid.n; ++i) v[i] = eval_barrier(b, grid.x(i));
  return Field(b.params, grid, v, TailModel{b.C1, b.params.N + b.params.sp()}, 0.0,
               TimeKind::rescaled, true);
}

std::vector<double> dyadic_samples(const Barrier& b, int count) {
  std::vector<double> r;
  for (int k = 0; k < count; ++k) r.push_back(2 * b.R1 * std::exp2(k));
  return r;
}

SupersolutionReport supersolution_residual(const Barrier& b, const std::vector<double>& r,
                                           const QuadConfig& cfg, double tol) {
  const Params& prm = b.params;
  const Exponents e = exponents(prm);
  double rmax = 2 * b.R1;
  for (double x : r) {
    if (x > b.R && x < 2 * b.R1)
      throw ValidationError("samples must lie in r <= R or r >= 2 R1");
    rmax = std::max(rmax, x);
  }
  const double h_target = std::min(b.R, b.R1 - b.R) / 32;
  SupersolutionReport rep;
  rep.tolerance = tol;
  rep.pass = true;
  for (double x : r) {
    int node;
    const Grid g = grid_through(x, h_target, 2 * rmax, &node);
    const Field G = barrier_field(b, g);
    SampleResidual s;
    s.r = x;
    s.op = apply_operator_at(G, node, cfg);
    if (x <= b.R) s.drift = -e.beta * prm.N * b.A;
    else if (x <= b.R1) s.drift = 0;
    else s.drift = e.beta * prm.sp() * b.C1 * std::pow(x, -(prm.N + prm.sp()));
    s.residual = s.op + s.drift;
    s.pass = s.residual >= -tol * std::abs(s.drift);
    rep.pass = rep.pass && s.pass;
    rep.samples.push_back(s);
  }
  return rep;
}

Barrier certify_inner(const Params& prm, double A, double R, const Epsilons& eps,
                      const QuadConfig& cfg, int max_doublings) {
  for (int k = 0; k <= max_doublings; ++k, A *= 2) {
    const Barrier b = build_barrier(prm, A, A * std::pow(R, prm.N), eps);
    if (supersolution_residual(b, {0.0, 0.5 * b.R}, cfg).pass) return b;
  }
  throw NumericalError("inner residual stayed negative after " + std::to_string(max_doublings) +
                       " doublings of A");
}

bool barrier_dominates(const Field& f, const Barrier& b) {
  const Grid& g = f.grid();
  for (int i = 0; i < g.n; ++i)
    if (f[i] > eval_barrier(b, g.x(i)) * (1 + 1e-12)) return false;
  if (f.tail().C <= 0) return true;
  if (g.R <= b.R1) {
    // tail starts inside the middle region: compare on a geometric sweep
    for (double r = g.R; r < 64 * std::max(b.R1, g.R); r *= 1.01)
      if (f.tail()(r) > eval_barrier(b, r) * (1 + 1e-12)) return false;
  }
  const double q = b.params.N + b.params.sp();
  return f.tail().C <= b.C1 * (1 + 1e-12) && f.tail().q >= q - 1e-12;
}

std::string certificate_report(const Barrier& b, const SupersolutionReport& rep) {
  std::ostringstream os;
  const Params& p = b.params;
  os << "barrier certificate\n";
  os << "s=" << fmt17(p.s) << " p=" << fmt17(p.p) << " N=" << p.N << "\n";
  os << "A=" << fmt17(b.A) << "\nR=" << fmt17(b.R) << "\nR1=" << fmt17(b.R1)
     << "\nC1=" << fmt17(b.C1) << "\nC2=" << fmt17(b.C2) << "\n";
  os << "gamma'=" << fmt17(b.gamma_prime) << " gamma1=" << fmt17(b.gamma1) << "\n";
  os << "eps=" << b.eps.e1 << "," << b.eps.e2 << "," << b.eps.e3 << "," << b.eps.e4 << "\n";
  const InequalityCheck c = check_inequalities(b);
  os << "inequalities (log margin rhs-lhs):\n";
  for (int k = 0; k < 4; ++k)
    os << "  [" << k + 1 << "] " << kIneqNames[k] << "  margin=" << fmt17(c.margin(k))
       << (c.margin(k) >= 0 ? "  ok" : "  FAIL") << "\n";
  os << "residuals (tolerance " << rep.tolerance << " x |drift|):\n";
  for (const auto& s : rep.samples)
    os << "  r=" << fmt17(s.r) << " op=" << fmt17(s.op) << " drift=" << fmt17(s.drift)
       << " residual=" << fmt17(s.residual) << (s.pass ? "  ok" : "  FAIL") << "\n";
  os << "result: " << (c.pass && rep.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

double lower_subsolution_value(const Params& prm, double c, double t, double r) {
  r = std::abs(r);
  const double q = prm.N + prm.sp();
  if (r <= 1) return 1.0;
  if (r >= 2) return c * t * std::pow(r, -q);
  const double xi = r - 1, H = xi * xi * (3 - 2 * xi);
  const double G1 = 1 + (c * std::pow(2.0, -q) - 1) * H;
  const double eta = 1 - H;
  return eta * G1 + (1 - eta) * c * t * std::pow(r, -q);
}

Field lower_subsolution(const Params& prm, double c, double t, const Grid& grid) {
  if (!(c > 0) || !(t > 0)) throw ValidationError("subsolution needs c, t > 0");
  if (!(grid.R > 2)) throw ValidationError("subsolution grid must extend past r = 2");
  Eigen::VectorXd v(grid.n);
  for (int i = 0; i < grid.n; ++i) v[i] = lower_subsolution_value(prm, c, t, grid.x(i));
  return Field(prm, grid, v, TailModel{c * t, prm.N + prm.sp()}, t, TimeKind::physical, true);
}

std::vector<SubsolutionSample> subsolution_verifier(const Params& prm, double c, double t,
                                                    const std::vector<double>& r,
                                                    const QuadConfig& cfg) {
  double rmax = 4;
  for (double x : r) {
    if (!(x > 3)) throw ValidationError("subsolution samples must satisfy r > 3");
    rmax = std::max(rmax, x);
  }
  const double q = prm.N + prm.sp();
  std::vector<SubsolutionSample> out;
  for (double x : r) {
    int node;
    const Grid g = grid_through(x, 1.0 / 32, 2 * rmax, &node);
    const Field U = lower_subsolution(prm, c, t, g);
    SubsolutionSample s;
    s.r = x;
    s.Ut = c * std::pow(g.x(node), -q);
    s.LU = apply_operator_at(U, node, cfg);
    s.value = s.Ut + s.LU;
    s.pass = s.value < 0;
    out.push_back(s);
  }
  return out;
}

double bisect_subsolution_c(const Params& prm, double t, const std::vector<double>& r,
                            const QuadConfig& cfg, double c_hi, int iters) {
  auto ok = [&](double c) {
    for (const auto& s : subsolution_verifier(prm, c, t, r, cfg))
      if (!s.pass) return false;
    return true;
  };
  if (ok(c_hi)) return c_hi;
  double lo = c_hi;
  int k = 0;
  do {
    lo *= 0.5;
    if (++k > 80) throw NumericalError("no subsolution constant c found");
  } while (!ok(lo));
  double hi = std::min(c_hi, 2 * lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = std::sqrt(lo * hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace fplap
