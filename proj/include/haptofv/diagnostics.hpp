#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "haptofv/grid.hpp"
#include "haptofv/model.hpp"

namespace haptofv {

struct StepStats;

/// Per-snapshot conserved quantities, bounds and the discrete analogues of
/// the a priori estimate functionals.
struct DiagnosticsRecord {
  double time = 0.0;
  double mass_m = 0.0, mass_p = 0.0, mass_v = 0.0; ///< sum field * |c|
  double min_m = 0.0, max_m = 0.0;
  double min_p = 0.0, max_p = 0.0;
  double min_v = 0.0, max_v = 0.0;
  /// Truncated entropy: sum |c| * m ln m over cells with m > 1.
  double entropy_m = 0.0;
  /// Smooth companion sum |c| * (m ln m - m) over cells with m > 0.
  double entropy_m_smooth = 0.0;
  /// sum over inner edges of |e|/d * (sqrt(v_r) - sqrt(v_l))^2.
  double grad_energy_v = 0.0;
  /// Running max of p along the trajectory (>= max_p of this snapshot).
  double p_bound = 0.0;
  int newton_iters = 0;
  double mass_balance_residual = 0.0; ///< relative, from the step stats

  /// Column names, in emission order, for the diagnostics table.
  static const char* csv_header();
  std::string csv_row() const;
};

/// Computes every record field from the state. `stats` may be null (then
/// newton_iters and mass_balance_residual stay 0); prev_p_bound threads
/// the running maximum through a trajectory.
DiagnosticsRecord compute_record(const State& state, const Grid& grid,
                                 double time, const StepStats* stats,
                                 double prev_p_bound = 0.0);

/// One out-of-bounds cell found by check_bounds.
struct BoundViolation {
  std::size_t cell;
  char field; ///< 'm', 'p' or 'v'
  double value;
};

/// Empty iff m >= -tol, p in [-tol, C_p + tol], v in [-tol, 1 + tol]
/// componentwise, with C_p = max(1, alpha/mu_p, p0_max) and tol = 1e-12.
/// Violations are data, not errors.
std::vector<BoundViolation> check_bounds(const State& state,
                                         const ModelParams& params,
                                         double p0_max);

/// The p bound constant used by check_bounds.
double p_bound_constant(const ModelParams& params, double p0_max);

/// |sum |c| (m_after + p_after - m_before - p_before) - reaction_integral|:
/// the tumor-mass change not attributable to the supplied reaction budget.
double mass_balance_check(const State& before, const State& after,
                          double reaction_integral, const Grid& grid);

} // namespace haptofv
