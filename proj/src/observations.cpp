#include "mjp/observations.hpp"

#include <cmath>

#include "mjp/errors.hpp"
#include "mjp/ffbs.hpp"
#include "mjp/mathutil.hpp"

namespace mjp {

double state_observation_log_density(const ObservationSet& obs,
                                     std::size_t obs_index, const State& x) {
  const std::vector<double>& value = obs.values[obs_index];
  if (obs.kind == ObservationSet::Kind::ExactState) {
    for (int c = 0; c < x.dim(); ++c)
      if (static_cast<double>(x[c]) != value[c]) return kLogZero;
    return 0.0;
  }
  if (obs.kind != ObservationSet::Kind::NoisyState)
    throw DomainError("state_observation_log_density: wrong observation kind");
  double total = 0.0;
  for (int c = 0; c < x.dim(); ++c)
    total += log_normal_pdf(value[c], static_cast<double>(x[c]), obs.sigma_obs);
  return total;
}

double observation_log_likelihood(const ObservationSet& obs,
                                  const Trajectory& traj,
                                  const std::vector<int>& jump_tags,
                                  const RateKernel& kernel) {
  if (obs.kind != ObservationSet::Kind::JumpTimes) {
    double total = 0.0;
    for (std::size_t r = 0; r < obs.size(); ++r) {
      if (obs.times[r] < 0.0 || obs.times[r] > traj.horizon) continue;
      total += state_observation_log_density(obs, r, state_at(traj, obs.times[r]));
    }
    return total;
  }

  if (jump_tags.size() != traj.times.size())
    throw DomainError("observation_log_likelihood: tags misaligned");
  std::vector<bool> seen(obs.size(), false);
  double total = 0.0;
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    // Which reaction produced this jump? Detection probability is keyed by
    // reaction type.
    double p_detect = -1.0;
    kernel.for_each_neighbor(traj.states[i - 1],
                             [&](std::size_t k, const State& y) {
                               if (y == traj.states[i])
                                 p_detect = obs.detect_prob[k];
                             });
    if (p_detect < 0.0) return kLogZero;  // jump not in the neighbor structure
    if (jump_tags[i] >= 0) {
      seen[static_cast<std::size_t>(jump_tags[i])] = true;
      if (p_detect <= 0.0) return kLogZero;
      total += std::log(p_detect);
    } else {
      if (p_detect >= 1.0) return kLogZero;  // always-observed jump, unobserved
      total += std::log1p(-p_detect);
    }
  }
  for (bool s : seen)
    if (!s) return kLogZero;  // an observation with no matching jump
  return total;
}

}  // namespace mjp
