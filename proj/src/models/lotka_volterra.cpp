#include "mjp/models/lotka_volterra.hpp"

#include "mjp/errors.hpp"
#include "mjp/simulate.hpp"

namespace mjp {

LotkaVolterraModel::LotkaVolterraModel(LotkaVolterraConfig config)
    : config_(config), kernel_(build_kernel()) {
  if (config_.bound < 1) throw DomainError("lotka-volterra: bound < 1");
  if (!kernel_.space().contains(config_.initial))
    throw DomainError("lotka-volterra: initial state outside bounds");
}

RateKernel LotkaVolterraModel::build_kernel() const {
  const Coord n = static_cast<Coord>(config_.bound);
  StateSpace space(State{0, 0}, State{n, n});
  const bool s = config_.seasonal;
  std::vector<Reaction> rx;
  rx.push_back({"prey_birth", State{1, 0}, config_.prey_birth,
                StructuralFactor::coord(0), s, {}});
  rx.push_back({"predation", State{-1, 0}, config_.predation,
                StructuralFactor::product(0, 1), s, {}});
  rx.push_back({"predator_birth", State{0, 1}, config_.predator_birth,
                StructuralFactor::product(0, 1), s, {}});
  rx.push_back({"predator_death", State{0, -1}, config_.predator_death,
                StructuralFactor::coord(1), s, {}});
  return RateKernel(space, std::move(rx),
                    config_.seasonal ? Seasonality::cosine(config_.horizon)
                                     : Seasonality::none());
}

InitialDistribution LotkaVolterraModel::initial_distribution() const {
  return InitialDistribution::point(config_.initial);
}

std::vector<std::string> LotkaVolterraModel::param_names() const {
  return {"prey_birth", "predation", "predator_birth", "predator_death"};
}

std::vector<double> LotkaVolterraModel::params() const {
  return {config_.prey_birth, config_.predation, config_.predator_birth,
          config_.predator_death};
}

void LotkaVolterraModel::update_params(const Trajectory& traj,
                                       RandomSource& rng) {
  const SufficientStats stats = complete_data_stats(traj, kernel_);
  double* rates[4] = {&config_.prey_birth, &config_.predation,
                      &config_.predator_birth, &config_.predator_death};
  for (std::size_t k = 0; k < 4; ++k) {
    *rates[k] = rng.gamma(
        config_.priors[k].shape + static_cast<double>(stats.jump_counts[k]),
        config_.priors[k].rate + stats.exposures[k]);
  }
  kernel_ = build_kernel();
}

void LotkaVolterraModel::init_chain(ChainState& chain, RandomSource& rng) {
  chain.traj = gillespie(kernel_, initial_distribution(), config_.horizon, rng);
  chain.jump_tags.assign(chain.traj.times.size(), -1);
  chain.sweep = 0;
}

OdeSystem LotkaVolterraModel::mean_system() const {
  OdeSystem system;
  system.dim = 2;
  system.y0 = {static_cast<double>(config_.initial[0]),
               static_cast<double>(config_.initial[1])};
  const Seasonality seasonal = kernel_.seasonality();
  system.rhs = [seasonal](double t, std::span<const double> y,
                          std::span<const double> params,
                          std::span<double> dy) {
    const double r = seasonal.value(t);
    dy[0] = r * (params[0] * y[0] - params[1] * y[0] * y[1]);
    dy[1] = r * (params[2] * y[0] * y[1] - params[3] * y[1]);
  };
  return system;
}

}  // namespace mjp
