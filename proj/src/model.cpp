#include "haptofv/model.hpp"

#include <stdexcept>
#include <string>

namespace haptofv {

namespace {

void require_physical(double m, double p, double v, const char* where) {
  if (m < 0.0 || p < 0.0)
    throw std::domain_error(std::string(where) +
                            ": negative cell density (m=" + std::to_string(m) +
                            ", p=" + std::to_string(p) + ")");
  if (v < 0.0 || v > 1.0)
    throw std::domain_error(std::string(where) + ": tissue density v=" +
                            std::to_string(v) + " outside [0,1]");
}

} // namespace

void ModelParams::validate() const {
  const struct {
    const char* name;
    double value;
  } rates[] = {{"alpha", alpha},   {"beta", beta},     {"kappa_m", kappa_m},
               {"kappa_v", kappa_v}, {"mu_p", mu_p},   {"mu_v", mu_v},
               {"eta", eta},       {"lambda", lambda}, {"eps1", eps1}};
  for (const auto& r : rates) {
    if (!(r.value >= 0.0))
      throw std::domain_error(std::string("model parameter ") + r.name +
                              " must be nonnegative, got " +
                              std::to_string(r.value));
  }
}

ModelParams table_params() { return ModelParams{}; }

void State::validate() const {
  if (p.size() != m.size() || v.size() != m.size())
    throw std::invalid_argument("state field lengths differ: m=" +
                                std::to_string(m.size()) + " p=" +
                                std::to_string(p.size()) + " v=" +
                                std::to_string(v.size()));
  for (std::size_t c = 0; c < m.size(); ++c)
    require_physical(m[c], p[c], v[c],
                     ("state cell " + std::to_string(c)).c_str());
}

double total_density(const State& state, std::size_t cell) {
  if (cell >= state.size())
    throw std::out_of_range("cell index " + std::to_string(cell) +
                            " outside state of " + std::to_string(state.size()) +
                            " cells");
  return state.m[cell] + state.p[cell];
}

double diffusion_coefficient(double m, double p, double v,
                             const ModelParams& params) {
  require_physical(m, p, v, "diffusion_coefficient");
  return diffusion_coefficient_raw(m, p, v, params);
}

double drift_velocity_coefficient(double m, double p, double v,
                                  const ModelParams& params) {
  require_physical(m, p, v, "drift_velocity_coefficient");
  return drift_velocity_coefficient_raw(m, p, v, params);
}

ReactionRates<double> reaction_rhs(double m, double p, double v,
                                   const ModelParams& params) {
  require_physical(m, p, v, "reaction_rhs");
  return reaction_rates_raw<double>(m, p, v, params);
}

} // namespace haptofv
