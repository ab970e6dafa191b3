#include "haptofv/integrate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "haptofv/errors.hpp"

namespace haptofv {

namespace {

constexpr double kBoundTol = 1e-12;

void check_reaction_bounds(const State& s) {
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (s.v[c] < -kBoundTol || s.v[c] > 1.0 + kBoundTol)
      throw BoundViolationError(c, 'v', s.v[c]);
    if (s.m[c] < -kBoundTol) throw BoundViolationError(c, 'm', s.m[c]);
    if (s.p[c] < -kBoundTol) throw BoundViolationError(c, 'p', s.p[c]);
  }
}

} // namespace

void TimeStepConfig::validate() const {
  if (!(dt > 0.0))
    throw std::invalid_argument("dt must be positive, got " +
                                std::to_string(dt));
  if (!(t_end >= 0.0))
    throw std::invalid_argument("t_end must be nonnegative, got " +
                                std::to_string(t_end));
  if (!(newton_tol > 0.0))
    throw std::invalid_argument("newton_tol must be positive, got " +
                                std::to_string(newton_tol));
  if (newton_max_iter < 1)
    throw std::invalid_argument("newton_max_iter must be at least 1, got " +
                                std::to_string(newton_max_iter));
  if (!(linear_tol > 0.0))
    throw std::invalid_argument("linear_tol must be positive, got " +
                                std::to_string(linear_tol));
}

State rk4_reaction_step(const State& state, const ModelParams& params,
                        double dt) {
  State out = state;
  for (std::size_t c = 0; c < out.size(); ++c)
    rk4_cell<double>(out.m[c], out.p[c], out.v[c], params, dt);
  check_reaction_bounds(out);
  return out;
}

ImexStepper::ImexStepper(const Grid& grid, const ModelParams& params,
                         const TimeStepConfig& cfg)
    : grid_(grid), params_(params), cfg_(cfg) {
  params_.validate();
  cfg_.validate();
}

StepStats ImexStepper::step(State& state) {
  if (state.size() != grid_.cell_count())
    throw std::invalid_argument("state has " + std::to_string(state.size()) +
                                " cells, grid has " +
                                std::to_string(grid_.cell_count()));

  // Explicit reaction stage; p and v are final for the step after it.
  State stage = rk4_reaction_step(state, params_, cfg_.dt);
  rhs_ = stage.m;

  ImplicitMOperator op(grid_, params_, stage.p, stage.v, rhs_, cfg_.dt);
  NewtonOptions opts{cfg_.newton_tol, cfg_.newton_max_iter, cfg_.linear_tol};
  NewtonStats newton = newton_solve(op, stage.m, opts);

  StepStats stats;
  stats.newton_iterations = newton.iterations;
  stats.newton_residual = newton.residual_norm;
  stats.residual_history = std::move(newton.residual_history);
  double solved = 0.0, explicit_mass = 0.0;
  for (std::size_t c = 0; c < rhs_.size(); ++c) {
    solved += stage.m[c];
    explicit_mass += rhs_[c];
  }
  stats.mass_balance_abs =
      std::abs(solved - explicit_mass) * grid_.cell_measure();
  const double denom = explicit_mass * grid_.cell_measure();
  stats.mass_balance_rel = denom > 0.0 ? stats.mass_balance_abs / denom : 0.0;

  state = std::move(stage);
  return stats;
}

std::pair<State, StepStats> imex_step(const State& state, const Grid& grid,
                                      const ModelParams& params,
                                      const TimeStepConfig& cfg) {
  ImexStepper stepper(grid, params, cfg);
  State next = state;
  StepStats stats = stepper.step(next);
  return {std::move(next), stats};
}

State run_simulation(const State& initial, const Grid& grid,
                     const ModelParams& params, const TimeStepConfig& cfg,
                     double snapshot_interval, const SnapshotSink& sink,
                     RunReport* report) {
  cfg.validate();
  if (initial.size() != grid.cell_count())
    throw std::invalid_argument("initial state does not match the grid");
  if (!(snapshot_interval > 0.0))
    throw std::invalid_argument("snapshot_interval must be positive, got " +
                                std::to_string(snapshot_interval));

  const long total_steps =
      static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  State state = initial;
  RunReport local;
  RunReport& rep = report ? *report : local;
  rep = RunReport{};
  rep.newton_iterations.reserve(std::max(total_steps, 0L));

  auto fold_extrema = [&rep](const State& s, bool first) {
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (first && c == 0) {
        rep.min_m = s.m[c];
        rep.max_p = s.p[c];
        rep.min_v = s.v[c];
        rep.max_v = s.v[c];
      }
      rep.min_m = std::min(rep.min_m, s.m[c]);
      rep.max_p = std::max(rep.max_p, s.p[c]);
      rep.min_v = std::min(rep.min_v, s.v[c]);
      rep.max_v = std::max(rep.max_v, s.v[c]);
    }
  };
  fold_extrema(state, true);

  double p_bound = 0.0;
  StepStats last_stats;
  auto emit = [&](double time, long step, const StepStats* stats) {
    DiagnosticsRecord rec = compute_record(state, grid, time, stats, p_bound);
    p_bound = rec.p_bound;
    if (sink) sink(SnapshotEvent{time, step, state, rec});
  };
  emit(0.0, 0, nullptr);

  ImexStepper stepper(grid, params, cfg);
  long emitted_block = 0; // index of the last snapshot_interval crossed
  for (long k = 1; k <= total_steps; ++k) {
    const double t = k * cfg.dt;
    try {
      last_stats = stepper.step(state);
    } catch (const NewtonDivergence& e) {
      rep.failure_reason = e.what();
    } catch (const BoundViolationError& e) {
      rep.failure_reason = e.what();
    } catch (const SingularJacobian& e) {
      rep.failure_reason = e.what();
    }
    if (!rep.failure_reason.empty()) {
      // state holds the last accepted step; report and stop.
      emit(rep.final_time, k - 1, rep.steps_taken > 0 ? &last_stats : nullptr);
      return state;
    }
    rep.steps_taken = k;
    rep.final_time = t;
    rep.newton_iterations.push_back(last_stats.newton_iterations);
    rep.max_mass_balance_rel =
        std::max(rep.max_mass_balance_rel, last_stats.mass_balance_rel);
    fold_extrema(state, false);

    const long block = static_cast<long>(std::floor(t / snapshot_interval + 1e-9));
    const bool final_step = (k == total_steps);
    if (block > emitted_block || final_step) {
      emitted_block = block;
      emit(t, k, &last_stats);
    }
  }

  rep.completed = true;
  return state;
}

} // namespace haptofv
