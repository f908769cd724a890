#pragma once

#include <string>
#include <vector>

#include "fplap/nlop.hpp"

namespace fplap {

enum class FlowMode { cauchy, rescaled };
enum class StepRule { jacobian, gradient };

FlowMode parse_mode(const std::string& s);

// snapshot times on a global lattice, so resumed runs hit the same stamps
struct RecordSchedule {
  enum class Kind { uniform, geometric, list } kind = Kind::uniform;
  double spacing = 0.1;          // uniform: m * spacing
  double base = 1.0;             // geometric: base * 10^{m / per_decade}, m >= 0
  int per_decade = 10;
  std::vector<double> times;     // list

  static RecordSchedule uniform(double dt);
  static RecordSchedule geometric(double base, int per_decade);
  static RecordSchedule list(std::vector<double> t);

  // first record time strictly after t (infinity if none)
  double next_after(double t) const;
};

struct StepController {
  double c_safe = 0.5;
  double eps_grad = 1e-6;
  long max_steps = 5'000'000;
  RecordSchedule record;
  StepRule rule = StepRule::jacobian;
  bool record_energy = true;

  void validate() const;
};

struct SnapshotStats {
  double time = 0, mass = 0, l1 = 0, l2 = 0, linf = 0, energy = 0;
};

struct Snapshot {
  Field field;
  SnapshotStats stats;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  FlowMode mode = FlowMode::cauchy;
  long steps = 0;
  bool exhausted = false;  // max_steps hit before t_end

  const Field& last() const { return snapshots.back().field; }
};

// c_safe h^{sp} / max(|Du|_inf^{p-2}, eps_grad)
double cfl_dt(const Field& f, const StepController& ctrl);
// drift limit c_safe h / (beta R)
double drift_dt(const Field& f, const StepController& ctrl);
// step allowed by ctrl.rule; jacobian rule is c_safe / max_i (d(Lu)_i/du_i + drift_i)
double admissible_dt(const Field& f, const OperatorValues& op, const StepController& ctrl,
                     FlowMode mode);
double admissible_dt(const Field& f, const QuadConfig& cfg, const StepController& ctrl,
                     FlowMode mode);

Field step_cauchy(const Field& u, double dt, const QuadConfig& cfg = {},
                  const StepController& ctrl = {}, bool refit = true);

struct RescaledTerms {
  bool op = true;
  bool drift = true;
};

struct StepReport {
  double mass_before = 0, mass_after = 0;
  double boundary_flux = 0;  // drift inflow through |y| = R during the step
  double operator_flux = 0;  // -dtau * int Lv over the grid
};

Field step_rescaled(const Field& v, double dtau, const QuadConfig& cfg = {},
                    const StepController& ctrl = {}, RescaledTerms terms = {},
                    StepReport* report = nullptr, bool refit = true);

// building blocks shared with the profile solver; no admissibility check
Field heun_step(const OperatorPlan& plan, const Field& u, const Eigen::VectorXd& Lu, double dt);
Field euler_rescaled(const Field& v, const Eigen::VectorXd& Lv, double dtau, RescaledTerms terms,
                     StepReport* report = nullptr);

SnapshotStats snapshot_stats(const Field& f, const OperatorPlan& plan, bool energy);

Trajectory evolve(const Field& u0, double t_end, const QuadConfig& cfg = {},
                  const StepController& ctrl = {}, FlowMode mode = FlowMode::cauchy);

// several fields advanced with one shared step sequence
std::vector<Trajectory> evolve_coupled(const std::vector<Field>& u0, double t_end,
                                       const QuadConfig& cfg = {},
                                       const StepController& ctrl = {},
                                       FlowMode mode = FlowMode::cauchy);

// time,mass,l1,l2,linf,energy
void write_trajectory_csv(const Trajectory& tr, const std::string& path);
// csv plus snap_XXXX.field checkpoints in dir
void write_trajectory(const Trajectory& tr, const std::string& dir);

}  // namespace fplap
