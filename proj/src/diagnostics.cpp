#include "haptofv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "haptofv/integrate.hpp"

namespace haptofv {

DiagnosticsRecord compute_record(const State& state, const Grid& grid,
                                 double time, const StepStats* stats,
                                 double prev_p_bound) {
  DiagnosticsRecord rec;
  rec.time = time;
  const double cell = grid.cell_measure();
  const std::size_t n = state.size();
  if (n > 0) {
    rec.min_m = rec.max_m = state.m[0];
    rec.min_p = rec.max_p = state.p[0];
    rec.min_v = rec.max_v = state.v[0];
  }
  for (std::size_t c = 0; c < n; ++c) {
    const double m = state.m[c], p = state.p[c], v = state.v[c];
    rec.mass_m += m;
    rec.mass_p += p;
    rec.mass_v += v;
    rec.min_m = std::min(rec.min_m, m);
    rec.max_m = std::max(rec.max_m, m);
    rec.min_p = std::min(rec.min_p, p);
    rec.max_p = std::max(rec.max_p, p);
    rec.min_v = std::min(rec.min_v, v);
    rec.max_v = std::max(rec.max_v, v);
    if (m > 1.0) rec.entropy_m += m * std::log(m);
    if (m > 0.0) rec.entropy_m_smooth += m * std::log(m) - m;
  }
  rec.mass_m *= cell;
  rec.mass_p *= cell;
  rec.mass_v *= cell;
  rec.entropy_m *= cell;
  rec.entropy_m_smooth *= cell;

  // Two-point discrete Dirichlet energy of sqrt(v); monitored quantity, so
  // a rounding-level negative v is truncated rather than propagated as NaN.
  for (const EdgeRef& e : grid.edges()) {
    const double sl = std::sqrt(std::max(state.v[e.left], 0.0));
    const double sr = std::sqrt(std::max(state.v[e.right], 0.0));
    rec.grad_energy_v += e.measure / e.dist * (sr - sl) * (sr - sl);
  }

  rec.p_bound = std::max(prev_p_bound, rec.max_p);
  if (stats) {
    rec.newton_iters = stats->newton_iterations;
    rec.mass_balance_residual = stats->mass_balance_rel;
  }
  return rec;
}

const char* DiagnosticsRecord::csv_header() {
  return "time,mass_m,mass_p,mass_v,min_m,max_m,min_p,max_p,min_v,max_v,"
         "entropy_m,entropy_m_smooth,grad_energy_v,p_bound,newton_iters,"
         "mass_balance_residual";
}

std::string DiagnosticsRecord::csv_row() const {
  char buf[640];
  std::snprintf(buf, sizeof buf,
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                "%.17g,%.17g,%.17g,%.17g,%d,%.17g",
                time, mass_m, mass_p, mass_v, min_m, max_m, min_p, max_p,
                min_v, max_v, entropy_m, entropy_m_smooth, grad_energy_v,
                p_bound, newton_iters, mass_balance_residual);
  return buf;
}

double p_bound_constant(const ModelParams& params, double p0_max) {
  double c_p = std::max(1.0, p0_max);
  if (params.mu_p > 0.0) c_p = std::max(c_p, params.alpha / params.mu_p);
  return c_p;
}

std::vector<BoundViolation> check_bounds(const State& state,
                                         const ModelParams& params,
                                         double p0_max) {
  constexpr double tol = 1e-12;
  const double c_p = p_bound_constant(params, p0_max);
  std::vector<BoundViolation> out;
  for (std::size_t c = 0; c < state.size(); ++c) {
    if (state.m[c] < -tol) out.push_back({c, 'm', state.m[c]});
    if (state.p[c] < -tol || state.p[c] > c_p + tol)
      out.push_back({c, 'p', state.p[c]});
    if (state.v[c] < -tol || state.v[c] > 1.0 + tol)
      out.push_back({c, 'v', state.v[c]});
  }
  return out;
}

double mass_balance_check(const State& before, const State& after,
                          double reaction_integral, const Grid& grid) {
  double change = 0.0;
  for (std::size_t c = 0; c < before.size(); ++c)
    change += after.m[c] + after.p[c] - before.m[c] - before.p[c];
  return std::abs(change * grid.cell_measure() - reaction_integral);
}

} // namespace haptofv
