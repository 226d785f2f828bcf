#ifndef MJP_TRAJECTORY_HPP
#define MJP_TRAJECTORY_HPP

#include <vector>

#include "mjp/random.hpp"
#include "mjp/rate_kernel.hpp"
#include "mjp/state.hpp"

namespace mjp {

// Piecewise-constant path on [0, horizon]: times[0] == 0, strictly
// increasing, no self-transitions. states[i] holds on [times[i], times[i+1]).
struct Trajectory {
  double horizon = 0.0;
  std::vector<double> times;
  std::vector<State> states;

  std::size_t n_jumps() const { return times.empty() ? 0 : times.size() - 1; }
  // Throws InvariantViolation when the representation is malformed.
  void validate() const;
};

// Uniformized path: self-transitions permitted. obs_tag pins a jump
// observation to an epoch (identity tags instead of float time comparisons;
// -1 means untagged).
struct AugmentedTrajectory {
  double horizon = 0.0;
  std::vector<double> times;
  std::vector<State> states;
  std::vector<int> obs_tag;

  void validate() const;
};

// Finite-support initial distribution over states.
class InitialDistribution {
 public:
  InitialDistribution() = default;
  explicit InitialDistribution(std::vector<std::pair<State, double>> mass);
  static InitialDistribution point(const State& x);

  const std::vector<std::pair<State, double>>& mass() const { return mass_; }
  double prob(const State& x) const;
  State sample(RandomSource& rng) const;

 private:
  std::vector<std::pair<State, double>> mass_;
};

// Right-continuous evaluation of the path at time t in [0, horizon].
const State& state_at(const Trajectory& traj, double t);

// Drop self-transition epochs; keeps epoch 0 and every change point.
Trajectory strip_virtual(const AugmentedTrajectory& aug);

// View a plain trajectory as an augmented one (no virtual epochs).
AugmentedTrajectory embed(const Trajectory& traj);

// Log of the exact path density: log pi(x0) - sum_i |Q_{x_i}| holding
// integrals + sum_i log Q_{x_{i-1},x_i}(t_i). A structurally impossible
// transition gives -inf rather than an error.
double trajectory_log_density(const Trajectory& traj, const RateKernel& kernel,
                              const InitialDistribution& init);

}  // namespace mjp

#endif
