#include "haptofv/haptofv.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "haptofv/config.hpp"
#include "haptofv/diagnostics.hpp"
#include "haptofv/driver.hpp"
#include "haptofv/errors.hpp"
#include "haptofv/grid.hpp"
#include "haptofv/initial.hpp"
#include "haptofv/integrate.hpp"
#include "haptofv/model.hpp"
#include "haptofv/snapshot.hpp"

using namespace haptofv;

// Opaque handle definitions: thin wrappers over the C++ core types.
struct hfv_grid {
  Grid grid;
};
struct hfv_state {
  State state;
};
struct hfv_stepper {
  ImexStepper stepper;
  State scratch;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

template <typename Fn>
hfv_status guarded(Fn&& fn) {
  try {
    fn();
    return HFV_OK;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return HFV_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return HFV_ERR_DOMAIN;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return HFV_ERR_OUT_OF_RANGE;
  } catch (const NewtonDivergence& e) {
    set_error(e.what());
    return HFV_ERR_NEWTON_DIVERGED;
  } catch (const SingularJacobian& e) {
    set_error(e.what());
    return HFV_ERR_SINGULAR_JACOBIAN;
  } catch (const BoundViolationError& e) {
    set_error(e.what());
    return HFV_ERR_BOUND_VIOLATION;
  } catch (const std::ios_base::failure& e) {
    set_error(e.what());
    return HFV_ERR_IO;
  } catch (const std::runtime_error& e) {
    // Filesystem and format errors in the I/O layer surface as
    // runtime_error with path context.
    set_error(e.what());
    return HFV_ERR_IO;
  } catch (const std::bad_alloc& e) {
    set_error(e.what());
    return HFV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return HFV_ERR_INTERNAL;
  }
}

hfv_status require(bool ok, const char* message) {
  if (ok) return HFV_OK;
  set_error(message);
  return HFV_ERR_INVALID_ARGUMENT;
}

ModelParams to_params(const hfv_params& p) {
  ModelParams out;
  out.alpha = p.alpha;
  out.beta = p.beta;
  out.kappa_m = p.kappa_m;
  out.kappa_v = p.kappa_v;
  out.mu_p = p.mu_p;
  out.mu_v = p.mu_v;
  out.eta = p.eta;
  out.lambda = p.lambda;
  out.eps1 = p.eps1;
  out.taxis_variant = p.taxis_variant == HFV_TAXIS_NUMERICS
                          ? TaxisVariant::NumericsSection
                          : TaxisVariant::ContinuousModel;
  return out;
}

hfv_params from_params(const ModelParams& p) {
  hfv_params out;
  out.alpha = p.alpha;
  out.beta = p.beta;
  out.kappa_m = p.kappa_m;
  out.kappa_v = p.kappa_v;
  out.mu_p = p.mu_p;
  out.mu_v = p.mu_v;
  out.eta = p.eta;
  out.lambda = p.lambda;
  out.eps1 = p.eps1;
  out.taxis_variant = p.taxis_variant == TaxisVariant::NumericsSection
                          ? HFV_TAXIS_NUMERICS
                          : HFV_TAXIS_CONTINUOUS;
  return out;
}

TimeStepConfig to_time_config(const hfv_time_config& c) {
  TimeStepConfig out;
  out.dt = c.dt;
  out.t_end = c.t_end;
  out.newton_tol = c.newton_tol;
  out.newton_max_iter = c.newton_max_iter;
  out.linear_tol = c.linear_tol;
  return out;
}

hfv_diagnostics to_c_diagnostics(const DiagnosticsRecord& r) {
  hfv_diagnostics out;
  out.time = r.time;
  out.mass_m = r.mass_m;
  out.mass_p = r.mass_p;
  out.mass_v = r.mass_v;
  out.min_m = r.min_m;
  out.max_m = r.max_m;
  out.min_p = r.min_p;
  out.max_p = r.max_p;
  out.min_v = r.min_v;
  out.max_v = r.max_v;
  out.entropy_m = r.entropy_m;
  out.entropy_m_smooth = r.entropy_m_smooth;
  out.grad_energy_v = r.grad_energy_v;
  out.p_bound = r.p_bound;
  out.newton_iters = r.newton_iters;
  out.mass_balance_residual = r.mass_balance_residual;
  return out;
}

RunConfig to_run_config(const hfv_run_config& c) {
  RunConfig out;
  out.nx = c.nx;
  out.ny = c.ny;
  out.params = to_params(c.params);
  out.time = to_time_config(c.time);
  out.rng_seed = c.seed;
  out.snapshot_interval = c.snapshot_interval;
  out.output_dir = c.output_dir;
  out.output_format = c.output_format == HFV_FORMAT_VTK_LEGACY
                          ? OutputFormat::VtkLegacy
                          : OutputFormat::CsvGrid;
  out.emit_heatmaps = c.emit_heatmaps != 0;
  return out;
}

void copy_string(char* dst, std::size_t cap, const std::string& src) {
  const std::size_t n = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

} // namespace

extern "C" {

const char* hfv_last_error(void) { return g_last_error.c_str(); }

void hfv_params_defaults(hfv_params* out) {
  if (out) *out = from_params(table_params());
}

void hfv_time_config_defaults(hfv_time_config* out) {
  if (!out) return;
  const TimeStepConfig d;
  out->dt = d.dt;
  out->t_end = d.t_end;
  out->newton_tol = d.newton_tol;
  out->newton_max_iter = d.newton_max_iter;
  out->linear_tol = d.linear_tol;
}

hfv_status hfv_grid_create(int nx, int ny, hfv_grid** out) {
  if (hfv_status s = require(out != nullptr, "null output pointer")) return s;
  return guarded([&] { *out = new hfv_grid{Grid(nx, ny)}; });
}

void hfv_grid_destroy(hfv_grid* grid) { delete grid; }

int hfv_grid_nx(const hfv_grid* grid) { return grid ? grid->grid.nx() : 0; }
int hfv_grid_ny(const hfv_grid* grid) { return grid ? grid->grid.ny() : 0; }

int64_t hfv_grid_cell_count(const hfv_grid* grid) {
  return grid ? static_cast<int64_t>(grid->grid.cell_count()) : 0;
}

int64_t hfv_grid_inner_edge_count(const hfv_grid* grid) {
  return grid ? static_cast<int64_t>(grid->grid.inner_edge_count()) : 0;
}

hfv_status hfv_state_create(const hfv_grid* grid, hfv_state** out) {
  if (hfv_status s = require(grid && out, "null grid or output pointer"))
    return s;
  return guarded([&] { *out = new hfv_state{State(grid->grid.cell_count())}; });
}

hfv_status hfv_state_create_initial(const hfv_grid* grid, uint64_t seed,
                                    hfv_state** out) {
  if (hfv_status s = require(grid && out, "null grid or output pointer"))
    return s;
  return guarded([&] {
    *out = new hfv_state{
        generate_initial_state(grid->grid, InitialConditionSpec{}, seed)};
  });
}

void hfv_state_destroy(hfv_state* state) { delete state; }

hfv_status hfv_state_get(const hfv_state* state, double* m, double* p,
                         double* v) {
  if (hfv_status s = require(state != nullptr, "null state")) return s;
  const std::size_t n = state->state.size();
  if (m) std::memcpy(m, state->state.m.data(), n * sizeof(double));
  if (p) std::memcpy(p, state->state.p.data(), n * sizeof(double));
  if (v) std::memcpy(v, state->state.v.data(), n * sizeof(double));
  return HFV_OK;
}

hfv_status hfv_state_set(hfv_state* state, const double* m, const double* p,
                         const double* v) {
  if (hfv_status s = require(state != nullptr, "null state")) return s;
  return guarded([&] {
    State candidate = state->state;
    const std::size_t n = candidate.size();
    if (m) std::copy(m, m + n, candidate.m.begin());
    if (p) std::copy(p, p + n, candidate.p.begin());
    if (v) std::copy(v, v + n, candidate.v.begin());
    candidate.validate();
    state->state = std::move(candidate);
  });
}

hfv_status hfv_stepper_create(const hfv_grid* grid, const hfv_params* params,
                              const hfv_time_config* cfg, hfv_stepper** out) {
  if (hfv_status s =
          require(grid && params && cfg && out, "null argument to stepper"))
    return s;
  return guarded([&] {
    *out = new hfv_stepper{
        ImexStepper(grid->grid, to_params(*params), to_time_config(*cfg)),
        State{}};
  });
}

void hfv_stepper_destroy(hfv_stepper* stepper) { delete stepper; }

hfv_status hfv_stepper_advance(hfv_stepper* stepper, hfv_state* state,
                               hfv_step_stats* stats) {
  if (hfv_status s = require(stepper && state, "null stepper or state"))
    return s;
  return guarded([&] {
    const StepStats st = stepper->stepper.step(state->state);
    if (stats) {
      stats->newton_iterations = st.newton_iterations;
      stats->newton_residual = st.newton_residual;
      stats->mass_balance_abs = st.mass_balance_abs;
      stats->mass_balance_rel = st.mass_balance_rel;
    }
  });
}

hfv_status hfv_state_diagnostics(const hfv_state* state, const hfv_grid* grid,
                                 double time, hfv_diagnostics* out) {
  if (hfv_status s = require(state && grid && out, "null argument")) return s;
  return guarded([&] {
    if (state->state.size() != grid->grid.cell_count())
      throw std::invalid_argument("state does not match the grid");
    *out = to_c_diagnostics(
        compute_record(state->state, grid->grid, time, nullptr, 0.0));
  });
}

hfv_status hfv_check_bounds(int64_t n, const double* m, const double* p,
                            const double* v, const hfv_params* params,
                            double p0_max, hfv_bound_violation* out,
                            int64_t capacity, int64_t* count) {
  if (hfv_status s = require(n >= 0 && m && p && v && params && count &&
                                 (capacity == 0 || out),
                             "null argument to bounds check"))
    return s;
  return guarded([&] {
    constexpr double tol = 1e-12;
    const double c_p = p_bound_constant(to_params(*params), p0_max);
    int64_t found = 0;
    auto report = [&](int64_t cell, char field, double value) {
      if (found < capacity) out[found] = {cell, field, value};
      ++found;
    };
    for (int64_t c = 0; c < n; ++c) {
      if (m[c] < -tol) report(c, 'm', m[c]);
      if (p[c] < -tol || p[c] > c_p + tol) report(c, 'p', p[c]);
      if (v[c] < -tol || v[c] > 1.0 + tol) report(c, 'v', v[c]);
    }
    *count = found;
  });
}

hfv_status hfv_write_snapshot(const hfv_state* state, const hfv_grid* grid,
                              double time, const char* dir, int format,
                              int emit_heatmaps, int index) {
  if (hfv_status s = require(state && grid && dir, "null argument")) return s;
  return guarded([&] {
    RunConfig config;
    config.nx = grid->grid.nx();
    config.ny = grid->grid.ny();
    config.output_dir = dir;
    config.output_format = format == HFV_FORMAT_VTK_LEGACY
                               ? OutputFormat::VtkLegacy
                               : OutputFormat::CsvGrid;
    config.emit_heatmaps = emit_heatmaps != 0;
    write_snapshot(state->state, grid->grid, time, config, index);
  });
}

hfv_status hfv_read_csv_field(const char* path, int* nx, int* ny, double* time,
                              char* field, double* values) {
  if (hfv_status s = require(path && nx && ny && time, "null argument"))
    return s;
  return guarded([&] {
    const CsvField parsed = read_csv_field(path);
    if (values) {
      if (*nx != parsed.nx || *ny != parsed.ny)
        throw std::invalid_argument(
            "value buffer sized for " + std::to_string(*nx) + "x" +
            std::to_string(*ny) + " but snapshot is " +
            std::to_string(parsed.nx) + "x" + std::to_string(parsed.ny));
      std::copy(parsed.values.begin(), parsed.values.end(), values);
    }
    *nx = parsed.nx;
    *ny = parsed.ny;
    *time = parsed.time;
    if (field) *field = parsed.field.empty() ? '?' : parsed.field[0];
  });
}

void hfv_run_config_defaults(hfv_run_config* out) {
  if (!out) return;
  const RunConfig d;
  out->nx = d.nx;
  out->ny = d.ny;
  out->params = from_params(d.params);
  hfv_time_config_defaults(&out->time);
  out->seed = d.rng_seed;
  out->snapshot_interval = d.snapshot_interval;
  copy_string(out->output_dir, sizeof out->output_dir, d.output_dir);
  out->output_format = HFV_FORMAT_CSV_GRID;
  out->emit_heatmaps = 0;
}

hfv_status hfv_run_config_load_file(const char* path, hfv_run_config* io) {
  if (hfv_status s = require(path && io, "null argument")) return s;
  return guarded([&] {
    const RunConfig loaded = load_config_file(path, to_run_config(*io));
    io->nx = loaded.nx;
    io->ny = loaded.ny;
    io->params = from_params(loaded.params);
    io->time.dt = loaded.time.dt;
    io->time.t_end = loaded.time.t_end;
    io->time.newton_tol = loaded.time.newton_tol;
    io->time.newton_max_iter = loaded.time.newton_max_iter;
    io->time.linear_tol = loaded.time.linear_tol;
    io->seed = loaded.rng_seed;
    io->snapshot_interval = loaded.snapshot_interval;
    copy_string(io->output_dir, sizeof io->output_dir, loaded.output_dir);
    io->output_format = loaded.output_format == OutputFormat::VtkLegacy
                            ? HFV_FORMAT_VTK_LEGACY
                            : HFV_FORMAT_CSV_GRID;
    io->emit_heatmaps = loaded.emit_heatmaps ? 1 : 0;
  });
}

hfv_status hfv_run(const hfv_run_config* config, hfv_progress_fn progress,
                   void* user, hfv_run_result* result) {
  if (hfv_status s = require(config && result, "null argument")) return s;
  return guarded([&] {
    const RunConfig cxx_config = to_run_config(*config);
    ProgressCallback cb;
    if (progress) {
      cb = [progress, user](const DiagnosticsRecord& rec) {
        const hfv_diagnostics d = to_c_diagnostics(rec);
        progress(&d, user);
      };
    }
    const RunResult r = run_with_config(cxx_config, cb);
    result->completed = r.report.completed ? 1 : 0;
    result->steps_taken = r.report.steps_taken;
    result->final_time = r.report.final_time;
    result->min_m = r.report.min_m;
    result->max_p = r.report.max_p;
    result->min_v = r.report.min_v;
    result->max_v = r.report.max_v;
    result->max_mass_balance_rel = r.report.max_mass_balance_rel;
    result->snapshots_written = r.snapshots_written;
    copy_string(result->failure_reason, sizeof result->failure_reason,
                r.report.failure_reason);
  });
}

} // extern "C"
