#include "haptofv/initial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace haptofv {

double psi(double sigma, double s) {
  if (!(sigma > 0.0))
    throw std::domain_error("psi: sigma must be positive, got " +
                            std::to_string(sigma));
  return std::exp(-s / (2.0 * sigma * sigma)) / (2.0 * M_PI * sigma);
}

bool in_tissue_support(double x1, double x2) {
  // S1, S2: horizontal bands.
  if (x2 > 0.35 && x2 < 0.45) return true;
  if (x2 > 0.7 && x2 < 0.8) return true;
  // S3: vertical strips.
  for (double xhat : {0.4, 0.45, 0.5, 0.55, 0.6, 0.65})
    if (std::abs(x1 - xhat) < 0.01) return true;
  // S4: diagonal strips.
  for (double xhat : {-0.2, -0.1, 0.0})
    if (std::abs(x1 - x2 - xhat) < 0.01) return true;
  // S5: oblique strips.
  for (double xhat : {0.5, 0.6})
    if (std::abs(x1 - 0.5 * x2 - xhat) < 0.01) return true;
  return false;
}

InitialPoint initial_fields_at(double x1, double x2,
                               const InitialConditionSpec& spec, double d_m,
                               double d_p) {
  const double dx = x1 - spec.center_x;
  const double dy = x2 - spec.center_y;
  const double r2 = dx * dx + dy * dy;
  const bool tissue = in_tissue_support(x1, x2);

  InitialPoint out{0.0, 0.0, 0.0};
  if (tissue && r2 < spec.radius2_m)
    out.m = std::min(spec.amp_m * psi(spec.sigma_m, r2 + d_m), 1.0);
  if (r2 < spec.radius2_p)
    out.p = std::min(spec.amp_p * psi(spec.sigma_p, r2 + d_p), 1.0);
  const double vt = tissue ? spec.tissue_level : 0.0;
  out.v = std::max(vt - (out.m + out.p), 0.0);
  return out;
}

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

} // namespace

double keyed_uniform(std::uint64_t seed, std::uint64_t cell,
                     std::uint64_t field) {
  std::uint64_t z = seed;
  z = mix64(z + 0x9E3779B97F4A7C15ull * (cell + 1));
  z = mix64(z + 0x9E3779B97F4A7C15ull * (field + 1));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

State generate_initial_state(const Grid& grid, const InitialConditionSpec& spec,
                             std::uint64_t seed) {
  const double span = spec.perturb_hi - spec.perturb_lo;
  State out(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const auto cell = static_cast<std::int32_t>(c);
    const double d_m = spec.perturb_lo + span * keyed_uniform(seed, c, 0);
    const double d_p = spec.perturb_lo + span * keyed_uniform(seed, c, 1);
    const InitialPoint point = initial_fields_at(
        grid.center_x(cell), grid.center_y(cell), spec, d_m, d_p);
    out.m[c] = point.m;
    out.p[c] = point.p;
    out.v[c] = point.v;
  }
  return out;
}

} // namespace haptofv
