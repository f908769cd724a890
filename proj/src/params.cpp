#include "fplap/params.hpp"

#include <string>

namespace fplap {

Params::Params(double s_, double p_, int N_) : s(s_), p(p_), N(N_) {
  if (!(s > 0.0 && s < 1.0))
    throw ValidationError("s must lie in (0,1), got " + std::to_string(s));
  if (!(p >= 2.0) || !std::isfinite(p))
    throw ValidationError("p must be >= 2, got " + std::to_string(p));
  if (N < 1) throw ValidationError("N must be >= 1");
}

Exponents exponents(const Params& prm) { return exponents_of(prm.s, prm.p, prm.N); }

}  // namespace fplap
