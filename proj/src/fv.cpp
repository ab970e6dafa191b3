#include "haptofv/fv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include "haptofv/errors.hpp"

namespace haptofv {

HarmonicMean harmonic_mean(double a, double b) {
  const double sum = a + b;
  if (sum <= 1e-300) return {0.0, 0.0, 0.0};
  const double ra = a / sum;
  const double rb = b / sum;
  return {a * rb, rb * rb, ra * ra};
}

double edge_diffusive_flux(double d_left, double d_right, double m_left,
                           double m_right, const EdgeRef& edge) {
  const double trans = harmonic_mean(d_left, d_right).value * 2.0 *
                       edge.measure / edge.dist;
  return trans * (m_right - m_left);
}

double edge_drift_flux(double v_coef_left, double v_coef_right, double v_left,
                       double v_right, double m_left, double m_right,
                       const EdgeRef& edge) {
  const double g = harmonic_mean(v_coef_left, v_coef_right).value *
                   (v_right - v_left) * 2.0 * edge.measure / edge.dist;
  if (g > 0.0) return g * m_left;
  if (g < 0.0) return g * m_right;
  return 0.0;
}

ImplicitMOperator::ImplicitMOperator(const Grid& grid,
                                     const ModelParams& params,
                                     std::span<const double> p_stage,
                                     std::span<const double> v_stage,
                                     std::span<const double> rhs, double dt)
    : grid_(grid), params_(params), p_stage_(p_stage), v_stage_(v_stage),
      rhs_(rhs), dt_(dt) {
  const std::size_t n = grid.cell_count();
  if (p_stage.size() != n || v_stage.size() != n || rhs.size() != n)
    throw std::invalid_argument("implicit operator: field sizes do not match "
                                "the grid cell count");
  build_pattern();
}

void ImplicitMOperator::build_pattern() {
  const auto n = static_cast<Eigen::Index>(grid_.cell_count());
  std::vector<Eigen::Triplet<double>> pattern;
  pattern.reserve(grid_.cell_count() + 4 * grid_.inner_edge_count());
  for (Eigen::Index c = 0; c < n; ++c) pattern.emplace_back(c, c, 1.0);
  for (const EdgeRef& e : grid_.edges()) {
    pattern.emplace_back(e.left, e.right, 0.0);
    pattern.emplace_back(e.right, e.left, 0.0);
  }
  jac_.resize(n, n);
  jac_.setFromTriplets(pattern.begin(), pattern.end());
  jac_.makeCompressed();

  // Resolve value-array slots once; assembly then writes straight into
  // valuePtr() without searches.
  auto slot = [this](std::int32_t row, std::int32_t col) -> std::ptrdiff_t {
    for (auto it = jac_.outerIndexPtr()[row]; it < jac_.outerIndexPtr()[row + 1];
         ++it) {
      if (jac_.innerIndexPtr()[it] == col) return it;
    }
    throw std::logic_error("jacobian pattern slot missing");
  };
  diag_slot_.resize(grid_.cell_count());
  for (std::int32_t c = 0; c < static_cast<std::int32_t>(grid_.cell_count());
       ++c)
    diag_slot_[c] = slot(c, c);
  edge_slots_.resize(grid_.inner_edge_count());
  for (std::size_t k = 0; k < grid_.edges().size(); ++k) {
    const EdgeRef& e = grid_.edges()[k];
    edge_slots_[k] = {slot(e.left, e.left), slot(e.left, e.right),
                      slot(e.right, e.left), slot(e.right, e.right)};
  }
}

void ImplicitMOperator::residual(std::span<const double> m_new,
                                 std::vector<double>& out) const {
  const std::size_t n = grid_.cell_count();
  if (m_new.size() != n)
    throw std::invalid_argument("residual: candidate m has " +
                                std::to_string(m_new.size()) +
                                " entries, grid has " + std::to_string(n));
  out.assign(n, 0.0);

  // Accumulate the net inflow rate per cell; every edge value enters its
  // two cells with opposite signs, which is the local conservation.
  for (const EdgeRef& e : grid_.edges()) {
    const auto l = e.left, r = e.right;
    const double dl = diffusion_coefficient_raw(m_new[l], p_stage_[l],
                                                v_stage_[l], params_);
    const double dr = diffusion_coefficient_raw(m_new[r], p_stage_[r],
                                                v_stage_[r], params_);
    const double diff = edge_diffusive_flux(dl, dr, m_new[l], m_new[r], e);
    const double vl = drift_velocity_coefficient_raw(m_new[l], p_stage_[l],
                                                     v_stage_[l], params_);
    const double vr = drift_velocity_coefficient_raw(m_new[r], p_stage_[r],
                                                     v_stage_[r], params_);
    const double drift = edge_drift_flux(vl, vr, v_stage_[l], v_stage_[r],
                                         m_new[l], m_new[r], e);
    const double net = diff - drift; // inflow into the left cell
    out[l] += net;
    out[r] -= net;
  }

  const double scale = dt_ / grid_.cell_measure();
  for (std::size_t c = 0; c < n; ++c)
    out[c] = m_new[c] - scale * out[c] - rhs_[c];
}

std::vector<double> ImplicitMOperator::residual(
    std::span<const double> m_new) const {
  std::vector<double> out;
  residual(m_new, out);
  return out;
}

const SparseMatrix& ImplicitMOperator::jacobian(std::span<const double> m_new) {
  const std::size_t n = grid_.cell_count();
  if (m_new.size() != n)
    throw std::invalid_argument("jacobian: candidate m has " +
                                std::to_string(m_new.size()) +
                                " entries, grid has " + std::to_string(n));
  double* values = jac_.valuePtr();
  std::fill(values, values + jac_.nonZeros(), 0.0);
  for (std::size_t c = 0; c < n; ++c) values[diag_slot_[c]] = 1.0;

  const double scale = dt_ / grid_.cell_measure();
  for (std::size_t k = 0; k < grid_.edges().size(); ++k) {
    const EdgeRef& e = grid_.edges()[k];
    const auto l = e.left, r = e.right;
    const double t = 2.0 * e.measure / e.dist;

    const double dl = diffusion_coefficient_raw(m_new[l], p_stage_[l],
                                                v_stage_[l], params_);
    const double dr = diffusion_coefficient_raw(m_new[r], p_stage_[r],
                                                v_stage_[r], params_);
    const HarmonicMean hd = harmonic_mean(dl, dr);
    const double dm_jump = m_new[r] - m_new[l];
    const double ddl = diffusion_coefficient_dm(m_new[l], p_stage_[l],
                                                v_stage_[l], params_);
    const double ddr = diffusion_coefficient_dm(m_new[r], p_stage_[r],
                                                v_stage_[r], params_);
    // F = harm(D_l,D_r) * (m_r - m_l) * t
    const double df_dml = t * (hd.da * ddl * dm_jump - hd.value);
    const double df_dmr = t * (hd.db * ddr * dm_jump + hd.value);

    const double vl = drift_velocity_coefficient_raw(m_new[l], p_stage_[l],
                                                     v_stage_[l], params_);
    const double vr = drift_velocity_coefficient_raw(m_new[r], p_stage_[r],
                                                     v_stage_[r], params_);
    const HarmonicMean hv = harmonic_mean(vl, vr);
    const double dv_jump = v_stage_[r] - v_stage_[l];
    const double g = hv.value * dv_jump * t;
    // Upwind cell held fixed (one-sided derivative at the switch).
    const double m_up = g > 0.0 ? m_new[l] : (g < 0.0 ? m_new[r] : 0.0);
    const double dvl = drift_velocity_coefficient_dm(m_new[l], p_stage_[l],
                                                     v_stage_[l], params_);
    const double dvr = drift_velocity_coefficient_dm(m_new[r], p_stage_[r],
                                                     v_stage_[r], params_);
    const double dg_dml = t * dv_jump * hv.da * dvl;
    const double dg_dmr = t * dv_jump * hv.db * dvr;
    const double dphi_dml = dg_dml * m_up + (g > 0.0 ? g : 0.0);
    const double dphi_dmr = dg_dmr * m_up + (g < 0.0 ? g : 0.0);

    // net inflow into l is F - phi; r gets the negative.
    const double dnet_dml = df_dml - dphi_dml;
    const double dnet_dmr = df_dmr - dphi_dmr;
    values[edge_slots_[k][0]] -= scale * dnet_dml; // d r_l / d m_l
    values[edge_slots_[k][1]] -= scale * dnet_dmr; // d r_l / d m_r
    values[edge_slots_[k][2]] += scale * dnet_dml; // d r_r / d m_l
    values[edge_slots_[k][3]] += scale * dnet_dmr; // d r_r / d m_r
  }
  return jac_;
}

std::vector<double> solve_sparse(const SparseMatrix& a,
                                 std::span<const double> b, double tol) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("solve_sparse: matrix is not square");
  if (static_cast<std::size_t>(a.rows()) != b.size())
    throw std::invalid_argument("solve_sparse: rhs length does not match");

  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(),
                                              static_cast<Eigen::Index>(b.size()));
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return std::vector<double>(b.size(), 0.0);

  Eigen::BiCGSTAB<SparseMatrix, Eigen::IncompleteLUT<double>> krylov;
  krylov.setTolerance(0.1 * tol);
  krylov.compute(a);
  Eigen::VectorXd x;
  if (krylov.info() == Eigen::Success) {
    x = krylov.solve(rhs);
    if ((a * x - rhs).norm() <= tol * rhs_norm)
      return std::vector<double>(x.data(), x.data() + x.size());
  }

  // Direct fallback; also the path for genuinely hard systems.
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(Eigen::SparseMatrix<double>(a));
  if (lu.info() != Eigen::Success)
    throw SingularJacobian("sparse LU factorization failed");
  x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !((a * x - rhs).norm() <= tol * rhs_norm))
    throw SingularJacobian("no solver reached the residual bound");
  return std::vector<double>(x.data(), x.data() + x.size());
}

NewtonStats newton_solve(ImplicitMOperator& op, std::vector<double>& m,
                         const NewtonOptions& options) {
  NewtonStats stats;
  std::vector<double> r;
  op.residual(m, r);
  auto max_norm = [](const std::vector<double>& v) {
    double n = 0.0;
    for (double x : v) n = std::max(n, std::abs(x));
    return n;
  };
  double norm = max_norm(r);
  stats.residual_history.push_back(norm);

  // Always performs at least one update, so an exactly-converged guess
  // still reports one (trivial) iteration.
  do {
    if (stats.iterations >= options.max_iterations)
      throw NewtonDivergence(stats.iterations, norm);
    const SparseMatrix& jac = op.jacobian(m);
    const std::vector<double> delta =
        solve_sparse(jac, r, options.linear_tolerance);
    for (std::size_t c = 0; c < m.size(); ++c) m[c] -= delta[c];
    ++stats.iterations;
    op.residual(m, r);
    norm = max_norm(r);
    stats.residual_history.push_back(norm);
  } while (norm > options.tolerance);

  stats.residual_norm = norm;
  return stats;
}

} // namespace haptofv
