#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "haptofv/diagnostics.hpp"
#include "haptofv/fv.hpp"
#include "haptofv/grid.hpp"
#include "haptofv/model.hpp"

namespace haptofv {

struct TimeStepConfig {
  double dt = 0.01;
  double t_end = 1000.0;
  double newton_tol = 1e-10;   ///< max-norm residual target
  int newton_max_iter = 25;
  double linear_tol = 1e-12;   ///< relative 2-norm bound of the inner solve

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Per-step solver statistics.
struct StepStats {
  int newton_iterations = 0;
  double newton_residual = 0.0;
  std::vector<double> residual_history;
  /// |sum |c| (m_implicit - m_stage)|, the implicit solve's mass defect.
  double mass_balance_abs = 0.0;
  /// Same, relative to the explicit-stage m mass (0 when that mass is 0).
  double mass_balance_rel = 0.0;
};

/// Advances every cell by one classical RK4 step of the reaction ODE.
/// No spatial coupling. Throws BoundViolationError if any output v leaves
/// [-1e-12, 1+1e-12] or any output m or p drops below -1e-12, which
/// signals a dt too large for the reaction stiffness.
State rk4_reaction_step(const State& state, const ModelParams& params,
                        double dt);

/// One IMEX step: explicit RK4 reaction stage, then the implicit
/// convection-diffusion solve for m (p and v have no spatial terms; their
/// rows are the identity). Construction builds the Jacobian pattern once;
/// step() reuses it, so prefer one stepper per run.
class ImexStepper {
public:
  ImexStepper(const Grid& grid, const ModelParams& params,
              const TimeStepConfig& cfg);

  /// Advances `state` in place by cfg.dt and returns the step statistics.
  StepStats step(State& state);

  const Grid& grid() const { return grid_; }

private:
  const Grid& grid_;
  ModelParams params_;
  TimeStepConfig cfg_;
  std::vector<double> rhs_;
};

/// Single-step convenience wrapper around ImexStepper.
std::pair<State, StepStats> imex_step(const State& state, const Grid& grid,
                                      const ModelParams& params,
                                      const TimeStepConfig& cfg);

/// What run_simulation hands to the snapshot sink at each emission.
struct SnapshotEvent {
  double time;
  long step;
  const State& state;
  const DiagnosticsRecord& record;
};
using SnapshotSink = std::function<void(const SnapshotEvent&)>;

/// Outcome of a full run, including the monitored extrema over every
/// accepted step (not just snapshot instants).
struct RunReport {
  bool completed = false;
  std::string failure_reason;
  long steps_taken = 0;
  double final_time = 0.0;
  double min_m = 0.0, max_p = 0.0, min_v = 0.0, max_v = 0.0;
  double max_mass_balance_rel = 0.0;
  std::vector<int> newton_iterations; ///< one entry per step
};

/// Runs ceil(t_end/dt) IMEX steps from `initial`. The sink (optional) is
/// invoked at t=0, whenever the time crosses a multiple of
/// snapshot_interval, and after the final step. On NewtonDivergence or a
/// reaction bound violation the run stops, the report carries the reason,
/// and the last valid state is returned. Deterministic for fixed inputs.
State run_simulation(const State& initial, const Grid& grid,
                     const ModelParams& params, const TimeStepConfig& cfg,
                     double snapshot_interval, const SnapshotSink& sink,
                     RunReport* report = nullptr);

} // namespace haptofv
