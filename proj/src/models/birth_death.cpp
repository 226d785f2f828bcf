#include "mjp/models/birth_death.hpp"

#include <algorithm>
#include <cmath>

#include "mjp/errors.hpp"
#include "mjp/simulate.hpp"

namespace mjp {

BirthDeathModel::BirthDeathModel(BirthDeathConfig config)
    : config_(config), kernel_(build_kernel()) {
  if (config_.capacity < 1) throw DomainError("birth-death: capacity < 1");
}

RateKernel BirthDeathModel::build_kernel() const {
  StateSpace space(State{0}, State{static_cast<Coord>(config_.capacity)});
  std::vector<Reaction> rx;
  rx.push_back({"birth", State{1}, config_.birth_rate,
                StructuralFactor::one(), false, {}});
  rx.push_back({"death", State{-1}, config_.death_rate,
                StructuralFactor::coord(0), config_.seasonal, {}});
  return RateKernel(space, std::move(rx),
                    config_.seasonal ? Seasonality::cosine(config_.horizon)
                                     : Seasonality::none());
}

InitialDistribution BirthDeathModel::initial_distribution() const {
  return InitialDistribution::point(
      State{static_cast<Coord>(config_.capacity)});
}

std::vector<std::string> BirthDeathModel::param_names() const {
  if (config_.infer_birth) return {"mu", "lambda"};
  return {"mu"};
}

std::vector<double> BirthDeathModel::params() const {
  if (config_.infer_birth) return {config_.death_rate, config_.birth_rate};
  return {config_.death_rate};
}

void BirthDeathModel::set_death_rate(double mu) {
  config_.death_rate = mu;
  kernel_ = build_kernel();
}

BirthDeathModel::Conditional BirthDeathModel::death_conditional(
    const Trajectory& traj) const {
  // Exposures exclude the rate parameter itself: sum_i x_i int r(s) ds.
  const SufficientStats stats = complete_data_stats(traj, kernel_);
  return {config_.death_prior.shape +
              static_cast<double>(stats.jump_counts[1]),
          config_.death_prior.rate + stats.exposures[1]};
}

void BirthDeathModel::update_params(const Trajectory& traj,
                                    RandomSource& rng) {
  const SufficientStats stats = complete_data_stats(traj, kernel_);
  config_.death_rate =
      rng.gamma(config_.death_prior.shape +
                    static_cast<double>(stats.jump_counts[1]),
                config_.death_prior.rate + stats.exposures[1]);
  if (config_.infer_birth) {
    config_.birth_rate =
        rng.gamma(config_.birth_prior.shape +
                      static_cast<double>(stats.jump_counts[0]),
                  config_.birth_prior.rate + stats.exposures[0]);
  }
  kernel_ = build_kernel();
}

void BirthDeathModel::init_chain(ChainState& chain, RandomSource& rng) {
  chain.traj = gillespie(kernel_, initial_distribution(), config_.horizon, rng);
  chain.jump_tags.assign(chain.traj.times.size(), -1);
  chain.sweep = 0;
}

OdeSystem BirthDeathModel::mean_system() const {
  OdeSystem system;
  system.dim = 1;
  system.y0 = {static_cast<double>(config_.capacity)};
  const double n = static_cast<double>(config_.capacity);
  const double lambda = config_.birth_rate;
  const Seasonality seasonal = kernel_.seasonality();
  system.rhs = [n, lambda, seasonal](double t, std::span<const double> y,
                                     std::span<const double> params,
                                     std::span<double> dy) {
    // Capacity indicator smoothed over a half-unit band so the fixed-step
    // integrator keeps its order.
    const double gate = std::clamp((n - y[0]) / 0.5, 0.0, 1.0);
    dy[0] = gate * lambda - seasonal.value(t) * y[0] * params[0];
  };
  return system;
}

}  // namespace mjp
