#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "haptofv/grid.hpp"
#include "haptofv/model.hpp"

namespace haptofv {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Harmonic edge coefficient a*b/(a+b) with its partial derivatives.
/// Defined as identically zero (value and derivatives) when a+b <= 1e-300:
/// the continuous extension at (0,0), so a fully degenerate edge carries no
/// flux and no sensitivity.
struct HarmonicMean {
  double value;
  double da;
  double db;
};
HarmonicMean harmonic_mean(double a, double b);

/// Diffusive edge flux into the LEFT cell,
///   F = harm(D_l, D_r) * (m_r - m_l) * 2|e|/d.
/// Positive when the neighbor holds more mass (diffusion flows
/// down-gradient); the right cell receives -F.
double edge_diffusive_flux(double d_left, double d_right, double m_left,
                           double m_right, const EdgeRef& edge);

/// Upwinded drift mass flow through the edge, oriented left -> right:
///   g = harm(V_l, V_r) * (v_r - v_l) * 2|e|/d,  flux = g * m_upwind,
/// with m_upwind = m_left when g > 0 (cells climb the tissue gradient and
/// leave the left cell), m_right when g < 0, and flux = 0 at g = 0.
/// The left cell loses the returned value; the right cell gains it.
double edge_drift_flux(double v_coef_left, double v_coef_right, double v_left,
                       double v_right, double m_left, double m_right,
                       const EdgeRef& edge);

/// Statistics of one Newton solve. `iterations` counts Newton updates
/// (linearized solves); the loop always performs at least one, so an
/// already-converged initial guess still reports 1. `residual_history`
/// holds the max-norm residual before the first update and after each.
struct NewtonStats {
  int iterations = 0;
  double residual_norm = 0.0;
  std::vector<double> residual_history;
};

/// Implicit operator of the m-equation for one IMEX step: residual and
/// Jacobian of
///   r_c = m_c - (dt/|c|) * sum_e (F_c^e + drift_c^e) - rhs_c,
/// where rhs is the explicit-stage m and the coefficients D, V are
/// evaluated at (m_candidate, p_stage, v_stage). p and v carry no spatial
/// terms and stay fixed during the solve.
///
/// The Jacobian lives on the 5-point stencil; its sparsity pattern is
/// built once per grid and refilled in place each call.
class ImplicitMOperator {
public:
  ImplicitMOperator(const Grid& grid, const ModelParams& params,
                    std::span<const double> p_stage,
                    std::span<const double> v_stage,
                    std::span<const double> rhs, double dt);

  /// Residual at the candidate m. Throws std::invalid_argument on a size
  /// mismatch.
  void residual(std::span<const double> m_new, std::vector<double>& out) const;
  std::vector<double> residual(std::span<const double> m_new) const;

  /// Exact Jacobian of the residual (upwind selection differentiated
  /// one-sidedly, i.e. held fixed). Returns a reference to the internally
  /// cached matrix, refreshed in place.
  const SparseMatrix& jacobian(std::span<const double> m_new);

  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }

private:
  const Grid& grid_;
  ModelParams params_;
  std::span<const double> p_stage_;
  std::span<const double> v_stage_;
  std::span<const double> rhs_;
  double dt_;

  SparseMatrix jac_;
  std::vector<std::ptrdiff_t> diag_slot_;          // per cell
  std::vector<std::array<std::ptrdiff_t, 4>> edge_slots_; // ll, lr, rl, rr
  void build_pattern();
};

/// Solves A x = b to ||Ax - b||_2 <= tol * ||b||_2, deterministically.
/// Tries ILU-preconditioned BiCGSTAB, falls back to a sparse direct
/// factorization, and verifies the bound on the true residual; throws
/// SingularJacobian if neither route reaches it.
std::vector<double> solve_sparse(const SparseMatrix& a,
                                 std::span<const double> b, double tol);

struct NewtonOptions {
  double tolerance = 1e-10;     ///< max-norm residual target
  int max_iterations = 25;
  double linear_tolerance = 1e-12;
};

/// Classical Newton iteration on `op`, starting from `m` (updated in
/// place). Throws NewtonDivergence when the cap is hit and propagates
/// SingularJacobian from the linear solver.
NewtonStats newton_solve(ImplicitMOperator& op, std::vector<double>& m,
                         const NewtonOptions& options);

} // namespace haptofv
