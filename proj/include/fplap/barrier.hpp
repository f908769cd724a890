#pragma once

#include <array>
#include <string>
#include <vector>

#include "fplap/nlop.hpp"

namespace fplap {

struct Epsilons {
  double e1 = 1, e2 = 1, e3 = 1, e4 = 1;
  static Epsilons all(double e) { return {e, e, e, e}; }
};

// A on r <= R, C2 r^{-N} on R < r <= R1, C1 r^{-(N+sp)} beyond
struct Barrier {
  Params params;
  double A = 0, R = 0, R1 = 0, C1 = 0, C2 = 0;
  Epsilons eps;
  double gamma_prime = 0, gamma1 = 0;
};

struct InequalityCheck {
  // log-space sides of the four constraints, lhs <= rhs required
  std::array<double, 4> lhs{}, rhs{};
  bool pass = false;
  int binding = 0;  // index of the smallest margin
  double margin(int k) const { return rhs[k] - lhs[k]; }
};

InequalityCheck check_inequalities(const Params& prm, double A, double C2, double R, double R1,
                                   const Epsilons& eps);
inline InequalityCheck check_inequalities(const Barrier& b) {
  return check_inequalities(b.params, b.A, b.C2, b.R, b.R1, b.eps);
}

// smallest power of two R1 > R meeting all four constraints
Barrier build_barrier(const Params& prm, double A, double C2, const Epsilons& eps,
                      double R1_cap = 1152921504606846976.0 /* 2^60 */);

double eval_barrier(const Barrier& b, double r);
Field barrier_field(const Barrier& b, const Grid& grid);

struct SampleResidual {
  double r = 0;
  double op = 0;        // L G(r)
  double drift = 0;     // -beta r^{1-N} (r^N G)_r
  double residual = 0;  // op + drift
  bool pass = false;
};

struct SupersolutionReport {
  std::vector<SampleResidual> samples;
  double tolerance = 0;
  bool pass = false;
};

// samples must lie in r <= R or r >= 2 R1; pass iff residual >= -tol * |drift|
SupersolutionReport supersolution_residual(const Barrier& b, const std::vector<double>& r,
                                           const QuadConfig& cfg = {}, double tol = 0.0);

// 2 R1 2^k, k = 0..count-1
std::vector<double> dyadic_samples(const Barrier& b, int count = 3);

// raise A (R fixed) until the inner residual at r in {0, R/2} is >= 0
Barrier certify_inner(const Params& prm, double A, double R, const Epsilons& eps,
                      const QuadConfig& cfg = {}, int max_doublings = 40);

bool barrier_dominates(const Field& f, const Barrier& b);

std::string certificate_report(const Barrier& b, const SupersolutionReport& rep);

// eta G1 + (1 - eta) c t r^{-(N+sp)}, plateau 1 on r <= 1, Hermite bridge on [1,2]
double lower_subsolution_value(const Params& prm, double c, double t, double r);
Field lower_subsolution(const Params& prm, double c, double t, const Grid& grid);

struct SubsolutionSample {
  double r = 0, Ut = 0, LU = 0, value = 0;
  bool pass = false;  // U_t + L U < 0
};

std::vector<SubsolutionSample> subsolution_verifier(const Params& prm, double c, double t,
                                                    const std::vector<double>& r,
                                                    const QuadConfig& cfg = {});

// largest c (log bisection) passing the verifier at all samples
double bisect_subsolution_c(const Params& prm, double t, const std::vector<double>& r,
                            const QuadConfig& cfg = {}, double c_hi = 64.0, int iters = 40);

}  // namespace fplap
