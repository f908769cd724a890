#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fplap {

enum ExitCode { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2, kExitVerification = 3 };

struct RunConfig {
  std::string command;
  std::vector<double> s{0.5}, p{4.0};
  int N = 1;
  double mass = 1.0;
  int grid_n = 1024;
  double grid_R = 40.0;
  std::string out = "out";
  std::string config;
  std::string cache;  // profile cache directory, empty for none
  int threads = 0;
  bool quick = false;
  std::uint64_t seed = 20240611;
  double tol_scale = 1.0;

  // profile
  double tol = 1e-6;
  double tau_max = 120.0;
  bool second_shape = false;

  // evolve
  std::string shape = "box";
  std::string init;  // checkpoint path, overrides shape
  std::string mode = "cauchy";
  double t_end = 1.0;
  double record = 0.1;
  double width = 1.0;
  double c_safe = 0.5;
  long max_steps = 5'000'000;

  // limits
  std::string family = "riccati";
  double r_min = 0.01, r_max = 10.0;
  int samples = 200;
  double t = 1.0;
  double C = 1.0, k = 1.0;

  // verify
  std::vector<int> only;

  void validate() const;
};

int cmd_profile(const RunConfig& cfg);
int cmd_evolve(const RunConfig& cfg);
int cmd_limits(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_figures(const RunConfig& cfg);

// parse, validate, dispatch; maps errors to exit codes
int run_cli(int argc, char** argv);

}  // namespace fplap
