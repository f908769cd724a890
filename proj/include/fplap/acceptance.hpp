#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "fplap/diagnostics.hpp"

namespace fplap {

enum class Scale { full, quick };

// profiles keyed by (s, p, R, n); optionally persisted as <dir>/profile_*.field/json
class ProfileCache {
 public:
  explicit ProfileCache(std::string dir = {}) : dir_(std::move(dir)) {}
  const Profile& get(const Params& prm, const Grid& grid, const ProfileOptions& opt = {});
  static std::string stem(const Params& prm, const Grid& grid);
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::map<std::tuple<double, double, double, int>, std::unique_ptr<Profile>> mem_;
};

struct AcceptanceOptions {
  Scale scale = Scale::full;
  double tol_scale = 1.0;     // multiplies every pass tolerance
  std::uint64_t seed = 20240611;
  std::vector<int> only;      // criterion ids; empty runs all
  std::string out_dir = "acceptance_out";
  ProfileCache* cache = nullptr;
  std::ostream* log = nullptr;  // one line per criterion as it finishes
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kCriteria = 12;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);
std::string format_line(const CriterionResult& r);

struct FigureProfile {
  std::string family;  // "p" or "s"
  Params params;
  std::string stem;
};

// the two sweeps: p in {3,4,6} at s = 1/2 and s in {0.3,0.5,0.8} at p = 4
std::vector<FigureProfile> figure_set();
// writes <dir>/fig_<family>_*.csv and *_loglog.csv; returns the profiles in figure_set order
std::vector<const Profile*> emit_figures(const std::string& dir, const Grid& grid,
                                         ProfileCache& cache, const ProfileOptions& opt = {});

// F(l/2) / F(0), l the half-maximum radius; 1 is perfectly flat
double flatness(const Field& F);

}  // namespace fplap
