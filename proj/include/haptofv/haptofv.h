/*
 * haptofv C API: finite-volume simulation of the degenerate haptotaxis
 * go-or-grow tumor-invasion model.
 *
 * All objects are opaque handles created and destroyed through this
 * interface. Every fallible call returns an hfv_status; HFV_OK is 0.
 * On failure, hfv_last_error() returns a thread-local description of the
 * most recent error. Output parameters are untouched on failure.
 */
#ifndef HAPTOFV_H
#define HAPTOFV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hfv_status {
  HFV_OK = 0,
  HFV_ERR_INVALID_ARGUMENT = 1, /* bad sizes, null pointers, bad config */
  HFV_ERR_DOMAIN = 2,           /* value outside its physical range */
  HFV_ERR_OUT_OF_RANGE = 3,     /* index out of range */
  HFV_ERR_NEWTON_DIVERGED = 4,
  HFV_ERR_SINGULAR_JACOBIAN = 5,
  HFV_ERR_BOUND_VIOLATION = 6,
  HFV_ERR_IO = 7,
  HFV_ERR_INTERNAL = 8
} hfv_status;

/* Thread-local message for the most recent failure on this thread. */
const char* hfv_last_error(void);

typedef struct hfv_grid hfv_grid;
typedef struct hfv_state hfv_state;
typedef struct hfv_stepper hfv_stepper;

enum { HFV_TAXIS_CONTINUOUS = 0, HFV_TAXIS_NUMERICS = 1 };
enum { HFV_FORMAT_CSV_GRID = 0, HFV_FORMAT_VTK_LEGACY = 1 };

typedef struct hfv_params {
  double alpha, beta, kappa_m, kappa_v, mu_p, mu_v, eta, lambda;
  double eps1;       /* relaxation diffusion floor, >= 0 */
  int taxis_variant; /* HFV_TAXIS_CONTINUOUS or HFV_TAXIS_NUMERICS */
} hfv_params;

typedef struct hfv_time_config {
  double dt;
  double t_end;
  double newton_tol;  /* max-norm residual target of the implicit solve */
  int newton_max_iter;
  double linear_tol;  /* relative 2-norm bound of the inner linear solve */
} hfv_time_config;

/* Published parameter table / default stepping configuration. */
void hfv_params_defaults(hfv_params* out);
void hfv_time_config_defaults(hfv_time_config* out);

/* ---- grid ---------------------------------------------------------- */

/* Uniform grid on the unit square; requires nx >= 2 and ny >= 2. */
hfv_status hfv_grid_create(int nx, int ny, hfv_grid** out);
void hfv_grid_destroy(hfv_grid* grid);
int hfv_grid_nx(const hfv_grid* grid);
int hfv_grid_ny(const hfv_grid* grid);
int64_t hfv_grid_cell_count(const hfv_grid* grid);
int64_t hfv_grid_inner_edge_count(const hfv_grid* grid);

/* ---- state --------------------------------------------------------- */

/* All-zero state with one entry of m, p, v per cell. */
hfv_status hfv_state_create(const hfv_grid* grid, hfv_state** out);
/* Seeded grate-like initial condition sampled at cell centers. */
hfv_status hfv_state_create_initial(const hfv_grid* grid, uint64_t seed,
                                    hfv_state** out);
void hfv_state_destroy(hfv_state* state);

/* Copies fields out; any destination may be NULL to skip that field.
 * Buffers must hold cell_count doubles. */
hfv_status hfv_state_get(const hfv_state* state, double* m, double* p,
                         double* v);
/* Validates and replaces the fields (m >= 0, p >= 0, 0 <= v <= 1);
 * NULL leaves a field unchanged. */
hfv_status hfv_state_set(hfv_state* state, const double* m, const double* p,
                         const double* v);

/* ---- stepping ------------------------------------------------------ */

typedef struct hfv_step_stats {
  int newton_iterations;
  double newton_residual;
  double mass_balance_abs;
  double mass_balance_rel;
} hfv_step_stats;

/* A reusable IMEX stepper (one explicit RK4 reaction stage plus the
 * implicit m solve per step). The grid must outlive the stepper. */
hfv_status hfv_stepper_create(const hfv_grid* grid, const hfv_params* params,
                              const hfv_time_config* cfg, hfv_stepper** out);
void hfv_stepper_destroy(hfv_stepper* stepper);
/* Advances the state in place by cfg.dt. stats may be NULL. */
hfv_status hfv_stepper_advance(hfv_stepper* stepper, hfv_state* state,
                               hfv_step_stats* stats);

/* ---- diagnostics --------------------------------------------------- */

typedef struct hfv_diagnostics {
  double time;
  double mass_m, mass_p, mass_v;
  double min_m, max_m, min_p, max_p, min_v, max_v;
  double entropy_m;        /* truncated: sum |c| m ln m over m > 1 */
  double entropy_m_smooth; /* sum |c| (m ln m - m) over m > 0 */
  double grad_energy_v;    /* sum_e |e|/d (sqrt(v_r)-sqrt(v_l))^2 */
  double p_bound;
  int newton_iters;
  double mass_balance_residual;
} hfv_diagnostics;

hfv_status hfv_state_diagnostics(const hfv_state* state, const hfv_grid* grid,
                                 double time, hfv_diagnostics* out);

typedef struct hfv_bound_violation {
  int64_t cell;
  char field; /* 'm', 'p' or 'v' */
  double value;
} hfv_bound_violation;

/* Bound audit of raw field arrays of length n against m >= -tol,
 * p in [-tol, C_p + tol], v in [-tol, 1 + tol], tol = 1e-12 and
 * C_p = max(1, alpha/mu_p, p0_max). Stores up to `capacity` violations in
 * `out` (may be NULL when capacity is 0); *count receives the total found. */
hfv_status hfv_check_bounds(int64_t n, const double* m, const double* p,
                            const double* v, const hfv_params* params,
                            double p0_max, hfv_bound_violation* out,
                            int64_t capacity, int64_t* count);

/* ---- snapshots ----------------------------------------------------- */

/* Writes snap_<index:08d>_{m,p,v,c}.* under `dir` (created if missing) in
 * the given format; emit_heatmaps additionally writes portable graymaps
 * plus a scale sidecar. */
hfv_status hfv_write_snapshot(const hfv_state* state, const hfv_grid* grid,
                              double time, const char* dir, int format,
                              int emit_heatmaps, int index);

/* Reads one csv_grid field file. Call with values == NULL to probe the
 * dimensions; otherwise `values` must hold (*nx) * (*ny) doubles.
 * `field` (may be NULL) receives the field letter. */
hfv_status hfv_read_csv_field(const char* path, int* nx, int* ny,
                              double* time, char* field, double* values);

/* ---- whole runs ---------------------------------------------------- */

typedef struct hfv_run_config {
  int nx, ny;
  hfv_params params;
  hfv_time_config time;
  uint64_t seed;
  double snapshot_interval;
  char output_dir[1024];
  int output_format;  /* HFV_FORMAT_* */
  int emit_heatmaps;
} hfv_run_config;

void hfv_run_config_defaults(hfv_run_config* out);
/* Layers a key=value config file over *io (flags-over-file layering is the
 * caller's job: load first, then override). */
hfv_status hfv_run_config_load_file(const char* path, hfv_run_config* io);

typedef struct hfv_run_result {
  int completed; /* 1 if the run reached t_end */
  long steps_taken;
  double final_time;
  double min_m, max_p, min_v, max_v; /* extrema over all accepted steps */
  double max_mass_balance_rel;
  int snapshots_written;
  char failure_reason[256]; /* empty when completed */
} hfv_run_result;

typedef void (*hfv_progress_fn)(const hfv_diagnostics* record, void* user);

/* Generates the seeded initial state, runs to t_end, writes snapshots and
 * a diagnostics.csv table under output_dir. Returns HFV_OK also when the
 * solver stopped early (inspect result->completed); non-OK only for
 * config/Io errors. */
hfv_status hfv_run(const hfv_run_config* config, hfv_progress_fn progress,
                   void* user, hfv_run_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HAPTOFV_H */
