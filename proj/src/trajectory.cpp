#include "mjp/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mjp/errors.hpp"

namespace mjp {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate_common(double horizon, const std::vector<double>& times,
                     const std::vector<State>& states) {
  if (times.empty() || times.size() != states.size())
    throw InvariantViolation("trajectory: times/states size mismatch");
  if (times.front() != 0.0)
    throw InvariantViolation("trajectory: must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw InvariantViolation("trajectory: times not strictly increasing");
  if (times.back() > horizon)
    throw InvariantViolation("trajectory: time beyond horizon");
}
}  // namespace

void Trajectory::validate() const {
  validate_common(horizon, times, states);
  for (std::size_t i = 1; i < states.size(); ++i)
    if (states[i] == states[i - 1])
      throw InvariantViolation("trajectory: self-transition present");
}

void AugmentedTrajectory::validate() const {
  validate_common(horizon, times, states);
  if (!obs_tag.empty() && obs_tag.size() != times.size())
    throw InvariantViolation("augmented trajectory: obs_tag size mismatch");
}

InitialDistribution::InitialDistribution(
    std::vector<std::pair<State, double>> mass)
    : mass_(std::move(mass)) {
  double total = 0.0;
  for (const auto& [x, p] : mass_) {
    if (!(p >= 0.0)) throw InvariantViolation("initial mass negative");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw InvariantViolation("initial masses must sum to 1");
}

InitialDistribution InitialDistribution::point(const State& x) {
  return InitialDistribution({{x, 1.0}});
}

double InitialDistribution::prob(const State& x) const {
  double p = 0.0;
  for (const auto& [y, q] : mass_)
    if (y == x) p += q;
  return p;
}

State InitialDistribution::sample(RandomSource& rng) const {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (const auto& [x, p] : mass_) {
    acc += p;
    if (u < acc) return x;
  }
  return mass_.back().first;
}

const State& state_at(const Trajectory& traj, double t) {
  if (t < 0.0 || t > traj.horizon)
    throw DomainError("state_at: time outside [0, horizon]");
  // Largest i with times[i] <= t.
  auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
  return traj.states[static_cast<std::size_t>(it - traj.times.begin()) - 1];
}

Trajectory strip_virtual(const AugmentedTrajectory& aug) {
  Trajectory out;
  out.horizon = aug.horizon;
  out.times.push_back(aug.times.front());
  out.states.push_back(aug.states.front());
  for (std::size_t i = 1; i < aug.times.size(); ++i) {
    if (aug.states[i] != aug.states[i - 1]) {
      out.times.push_back(aug.times[i]);
      out.states.push_back(aug.states[i]);
    }
  }
  return out;
}

AugmentedTrajectory embed(const Trajectory& traj) {
  AugmentedTrajectory aug;
  aug.horizon = traj.horizon;
  aug.times = traj.times;
  aug.states = traj.states;
  aug.obs_tag.assign(traj.times.size(), -1);
  return aug;
}

double trajectory_log_density(const Trajectory& traj, const RateKernel& kernel,
                              const InitialDistribution& init) {
  const double p0 = init.prob(traj.states.front());
  if (p0 <= 0.0) return kNegInf;
  double log_density = std::log(p0);
  const std::size_t n = traj.times.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double t_end = (i + 1 < n) ? traj.times[i + 1] : traj.horizon;
    log_density -= kernel.exit_integral(traj.states[i], traj.times[i], t_end);
    if (i > 0) {
      const double q =
          kernel.off_rate(traj.states[i - 1], traj.states[i], traj.times[i]);
      if (q <= 0.0) return kNegInf;
      log_density += std::log(q);
    }
  }
  return log_density;
}

}  // namespace mjp
