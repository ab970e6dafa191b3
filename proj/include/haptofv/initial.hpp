#pragma once

#include <cstdint>

#include "haptofv/grid.hpp"
#include "haptofv/model.hpp"

namespace haptofv {

/// Parameters of the grate-like initial condition: the tumor bumps, the
/// tissue level on the stripe pattern, and the per-cell perturbation range.
struct InitialConditionSpec {
  double tissue_level = 0.9;
  double sigma_m = 0.05;
  double amp_m = 0.5;
  double radius2_m = 0.02; ///< squared support radius of the m bump
  double sigma_p = 0.1;
  double amp_p = 0.8;
  double radius2_p = 0.01;
  double center_x = 0.5;
  double center_y = 0.5;
  double perturb_lo = -0.01;
  double perturb_hi = 0.04;
};

/// Psi_sigma(s) = exp(-s/(2 sigma^2)) / (2 pi sigma); strictly positive,
/// decreasing in s for s >= 0. Throws std::domain_error for sigma <= 0.
double psi(double sigma, double s);

/// True iff x lies in the union of the five stripe sets S1..S5 (two
/// horizontal bands, six vertical strips, three diagonal and two oblique
/// strips), all with strict inequalities.
bool in_tissue_support(double x1, double x2);

/// Pointwise initial fields at position (x1,x2), with the perturbations
/// d_m, d_p made explicit:
///   vt = tissue_level * 1{x in S}
///   m0 = 1{|x-x0|^2 < r2_m} * min(amp_m * Psi_{sigma_m}(|x-x0|^2 + d_m), 1) * 1{x in S}
///   p0 = 1{|x-x0|^2 < r2_p} * min(amp_p * Psi_{sigma_p}(|x-x0|^2 + d_p), 1)
///   v0 = max(vt - (m0 + p0), 0)
struct InitialPoint {
  double m, p, v;
};
InitialPoint initial_fields_at(double x1, double x2,
                               const InitialConditionSpec& spec, double d_m,
                               double d_p);

/// Counter-based keyed generator: a splitmix64-style mix of
/// (seed, cell, field) mapped to [0,1). Identical on every platform and
/// independent of evaluation order.
double keyed_uniform(std::uint64_t seed, std::uint64_t cell,
                     std::uint64_t field);

/// Samples the initial condition at every cell center, drawing the
/// perturbation i.i.d. per cell and per field (field 0 feeds m, field 1
/// feeds p) from U(perturb_lo, perturb_hi). Bitwise reproducible for a
/// fixed seed.
State generate_initial_state(const Grid& grid, const InitialConditionSpec& spec,
                             std::uint64_t seed);

} // namespace haptofv
