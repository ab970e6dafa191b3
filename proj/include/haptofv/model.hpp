#pragma once

#include <cstddef>
#include <vector>

namespace haptofv {

/// Which denominator the haptotactic drift coefficient uses.
/// The continuous model carries kappa_v/(1+v)^2; the discretized scheme is
/// stated with kappa_v/(1+m+p)^2. Both are supported; the continuous form
/// is the default.
enum class TaxisVariant { ContinuousModel, NumericsSection };

/// Rate constants of the go-or-grow model plus the relaxation diffusion
/// floor eps1 (eps1 = 0 recovers the degenerate model).
struct ModelParams {
  double alpha = 0.01;    ///< migrating -> proliferating transition rate
  double beta = 0.2;      ///< proliferating -> migrating transition factor
  double kappa_m = 0.1;   ///< diffusion scale
  double kappa_v = 0.1;   ///< haptotaxis scale
  double mu_p = 0.3;      ///< tumor proliferation rate
  double mu_v = 0.021;    ///< tissue regrowth rate
  double eta = 1.75;      ///< tissue weight in the proliferation capacity
  double lambda = 0.1;    ///< tissue degradation rate by migrating cells
  double eps1 = 0.0;      ///< relaxation diffusion, >= 0
  TaxisVariant taxis_variant = TaxisVariant::ContinuousModel;

  /// Throws std::domain_error if any rate is negative.
  void validate() const;
};

/// The published parameter set (all rates strictly positive, eps1 = 0).
ModelParams table_params();

/// Piecewise-constant cell fields: migrating cells m, proliferating cells
/// p, tissue density v. All three arrays share the cell count.
struct State {
  std::vector<double> m;
  std::vector<double> p;
  std::vector<double> v;

  State() = default;
  explicit State(std::size_t cells)
      : m(cells, 0.0), p(cells, 0.0), v(cells, 0.0) {}

  std::size_t size() const { return m.size(); }

  /// Checks m >= 0, p >= 0, 0 <= v <= 1 componentwise and equal lengths;
  /// throws std::domain_error / std::invalid_argument on failure.
  void validate() const;
};

/// m + p at one cell. Throws std::out_of_range on a bad index.
double total_density(const State& state, std::size_t cell);

/// Reaction right-hand side per component.
template <typename Real>
struct ReactionRates {
  Real dm, dp, dv;
};

/// Unvalidated reaction kernel, usable mid-stage where RK4 intermediates
/// may sit a rounding error outside the physical ranges. Templated on the
/// scalar so convergence studies can instantiate it at higher precision.
template <typename Real>
inline ReactionRates<Real> reaction_rates_raw(Real m, Real p, Real v,
                                              const ModelParams& k) {
  const Real c = m + p;
  const Real transfer = Real(k.beta) * v * p;
  ReactionRates<Real> r;
  r.dm = -Real(k.alpha) * m + transfer;
  r.dp = Real(k.alpha) * m - transfer +
         Real(k.mu_p) * p * (Real(1) - c - Real(k.eta) * v);
  r.dv = Real(k.mu_v) * v * (Real(1) - v) - Real(k.lambda) * v * m;
  return r;
}

/// One classical RK4 step of the cell-local reaction ODE.
template <typename Real>
inline void rk4_cell(Real& m, Real& p, Real& v, const ModelParams& k,
                     Real dt) {
  const auto k1 = reaction_rates_raw<Real>(m, p, v, k);
  const Real half = dt / Real(2);
  const auto k2 = reaction_rates_raw<Real>(m + half * k1.dm, p + half * k1.dp,
                                           v + half * k1.dv, k);
  const auto k3 = reaction_rates_raw<Real>(m + half * k2.dm, p + half * k2.dp,
                                           v + half * k2.dv, k);
  const auto k4 = reaction_rates_raw<Real>(m + dt * k3.dm, p + dt * k3.dp,
                                           v + dt * k3.dv, k);
  const Real w = dt / Real(6);
  m += w * (k1.dm + Real(2) * k2.dm + Real(2) * k3.dm + k4.dm);
  p += w * (k1.dp + Real(2) * k2.dp + Real(2) * k3.dp + k4.dp);
  v += w * (k1.dv + Real(2) * k2.dv + Real(2) * k3.dv + k4.dv);
}

/// Degenerate diffusion coefficient
///   D = kappa_m * v * (m+p) / (1 + v*(m+p)) + eps1,
/// monotone nondecreasing in each argument, in [eps1, kappa_m + eps1).
/// Throws std::domain_error on negative m, p or v outside [0,1].
double diffusion_coefficient(double m, double p, double v,
                             const ModelParams& params);

/// Unvalidated form for assembly on Newton iterates.
inline double diffusion_coefficient_raw(double m, double p, double v,
                                        const ModelParams& k) {
  const double vc = v * (m + p);
  return k.kappa_m * vc / (1.0 + vc) + k.eps1;
}

/// d/dm of diffusion_coefficient_raw at fixed p, v.
inline double diffusion_coefficient_dm(double m, double p, double v,
                                       const ModelParams& k) {
  const double vc = v * (m + p);
  const double den = 1.0 + vc;
  return k.kappa_m * v / (den * den);
}

/// Haptotactic drift coefficient; kappa_v/(1+v)^2 for the continuous
/// variant, kappa_v/(1+m+p)^2 for the numerics variant. In (0, kappa_v].
/// Throws std::domain_error on negative m, p or v outside [0,1].
double drift_velocity_coefficient(double m, double p, double v,
                                  const ModelParams& params);

inline double drift_velocity_coefficient_raw(double m, double p, double v,
                                             const ModelParams& k) {
  const double den = (k.taxis_variant == TaxisVariant::ContinuousModel)
                         ? 1.0 + v
                         : 1.0 + m + p;
  return k.kappa_v / (den * den);
}

/// d/dm of the drift coefficient; zero for the continuous variant.
inline double drift_velocity_coefficient_dm(double m, double p, double v,
                                            const ModelParams& k) {
  if (k.taxis_variant == TaxisVariant::ContinuousModel) {
    (void)v;
    return 0.0;
  }
  const double den = 1.0 + m + p;
  return -2.0 * k.kappa_v / (den * den * den);
}

/// Validated reaction right-hand side; dm + dp equals the proliferation
/// term exactly (the transition terms cancel).
ReactionRates<double> reaction_rhs(double m, double p, double v,
                                   const ModelParams& params);

} // namespace haptofv
