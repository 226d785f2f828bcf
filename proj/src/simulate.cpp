#include "mjp/simulate.hpp"

#include <cmath>
#include <vector>

#include "mjp/errors.hpp"

namespace mjp {

Trajectory gillespie(const RateKernel& kernel, const InitialDistribution& init,
                     double T, RandomSource& rng) {
  Trajectory traj;
  traj.horizon = T;
  double t = 0.0;
  State x = init.sample(rng);
  traj.times.push_back(0.0);
  traj.states.push_back(x);

  std::vector<double> rates;
  while (true) {
    const double bound = kernel.exit_rate_max(x);
    if (bound <= 0.0) break;  // absorbed
    // Thin candidate epochs at the state's rate bound.
    double accepted = -1.0;
    while (true) {
      t += rng.exponential(bound);
      if (t >= T) break;
      const double rate = kernel.exit_rate(x, t);
      if (rate > bound * (1.0 + 1e-12))
        throw InvariantViolation("gillespie: exit rate exceeds bound");
      if (rng.uniform01() * bound < rate) {
        accepted = rate;
        break;
      }
    }
    if (t >= T) break;

    rates.clear();
    std::vector<State> dests;
    kernel.for_each_neighbor(x, [&](std::size_t k, const State& y) {
      rates.push_back(kernel.reaction_rate(k, x, t));
      dests.push_back(y);
    });
    const std::size_t pick = rng.categorical(rates, accepted);
    x = dests[pick];
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

AugmentedTrajectory simulate_uniformized(const RateKernel& kernel,
                                         double omega,
                                         const InitialDistribution& init,
                                         double T, RandomSource& rng) {
  if (!(omega > 0.0)) throw DomainError("simulate_uniformized: omega <= 0");
  AugmentedTrajectory aug;
  aug.horizon = T;
  double t = 0.0;
  State x = init.sample(rng);
  aug.times.push_back(0.0);
  aug.states.push_back(x);
  aug.obs_tag.push_back(-1);

  std::vector<double> rates;
  std::vector<State> dests;
  while (true) {
    t += rng.exponential(omega);
    if (t >= T) break;
    const double exit = kernel.exit_rate(x, t);
    if (exit > omega * (1.0 + 1e-12))
      throw InvariantViolation("simulate_uniformized: omega below exit rate");
    if (rng.uniform01() * omega < exit) {
      rates.clear();
      dests.clear();
      kernel.for_each_neighbor(x, [&](std::size_t k, const State& y) {
        rates.push_back(kernel.reaction_rate(k, x, t));
        dests.push_back(y);
      });
      x = dests[rng.categorical(rates, exit)];
    }
    // else: virtual (self) transition
    aug.times.push_back(t);
    aug.states.push_back(x);
    aug.obs_tag.push_back(-1);
  }
  return aug;
}

double transition_probability_oracle(const RateKernel& kernel, double omega,
                                     const State& from, const State& to,
                                     double s, double tail_mass) {
  if (!kernel.time_homogeneous())
    throw UnsupportedError("oracle requires a time-homogeneous kernel");
  const StateSpace& space = kernel.space();
  if (!space.bounded())
    throw UnsupportedError("oracle requires a bounded state space");
  if (s < 0.0) throw DomainError("oracle: negative duration");
  if (s == 0.0) return from == to ? 1.0 : 0.0;

  const std::size_t n = space.volume();
  if (n > 100000)
    throw UnsupportedError("oracle: state space too large for dense series");

  // Probability vector over the encoded space, advanced by P = I + Q/omega.
  std::vector<double> v(n, 0.0), next(n, 0.0);
  v[space.encode(from)] = 1.0;
  const std::size_t target = space.encode(to);

  const double mean = s * omega;
  double log_pmf = -mean;  // log Pois(0; mean)
  double cumulative = std::exp(log_pmf);
  double result = std::exp(log_pmf) * v[target];

  const std::size_t max_terms = 1000000;
  for (std::size_t k = 1; k <= max_terms; ++k) {
    if (1.0 - cumulative < tail_mass && k > static_cast<std::size_t>(mean))
      break;
    // next = v P
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double mass = v[i];
      if (mass == 0.0) continue;
      const State x = space.decode(i);
      const double exit = kernel.exit_rate(x, 0.0);
      next[i] += mass * (1.0 - exit / omega);
      kernel.for_each_neighbor(x, [&](std::size_t r, const State& y) {
        next[space.encode(y)] += mass * kernel.reaction_rate(r, x, 0.0) / omega;
      });
    }
    v.swap(next);
    log_pmf += std::log(mean) - std::log(static_cast<double>(k));
    const double pmf = std::exp(log_pmf);
    cumulative += pmf;
    result += pmf * v[target];
  }
  return result;
}

}  // namespace mjp
