#ifndef MJP_OBSERVATIONS_HPP
#define MJP_OBSERVATIONS_HPP

#include <vector>

#include "mjp/state.hpp"
#include "mjp/trajectory.hpp"

namespace mjp {

// Data attached to a latent path: either (possibly noisy) population levels
// at fixed times, or observed jumps. Jump detection is keyed by reaction
// index; an observed jump pins the transition to its epoch, an undetected
// one contributes its (1 - p) factor along the path.
struct ObservationSet {
  enum class Kind { NoisyState, ExactState, JumpTimes };

  Kind kind = Kind::NoisyState;
  std::vector<double> times;                // ordered observation times
  std::vector<std::vector<double>> values;  // per observation (state kinds)
  double sigma_obs = 1.0;                   // NoisyState measurement error
  std::vector<double> detect_prob;          // per reaction (JumpTimes)

  std::size_t size() const { return times.size(); }
};

// Log-likelihood of one state observation given the occupied state.
double state_observation_log_density(const ObservationSet& obs,
                                     std::size_t obs_index, const State& x);

// Full observation log-likelihood of a path. For JumpTimes the jump_tags
// array pairs trajectory jumps with observation indices (-1 untagged); a
// tagged epoch must exist for every observation.
double observation_log_likelihood(const ObservationSet& obs,
                                  const Trajectory& traj,
                                  const std::vector<int>& jump_tags,
                                  const RateKernel& kernel);

}  // namespace mjp

#endif
