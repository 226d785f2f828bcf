#ifndef MJP_SIMULATE_HPP
#define MJP_SIMULATE_HPP

#include "mjp/random.hpp"
#include "mjp/rate_kernel.hpp"
#include "mjp/trajectory.hpp"

namespace mjp {

// Exact draw from the path law on [0, T]. Time dependence is handled by
// thinning against the per-state bound kernel.exit_rate_max(x); a realized
// rate above that bound raises InvariantViolation.
Trajectory gillespie(const RateKernel& kernel, const InitialDistribution& init,
                     double T, RandomSource& rng);

// Uniformized simulation: candidate epochs at constant rate omega, state
// chain advancing with self-transition probability 1 - exit/omega and
// neighbour probability off_rate/omega. omega must dominate every realized
// exit rate.
AugmentedTrajectory simulate_uniformized(const RateKernel& kernel,
                                         double omega,
                                         const InitialDistribution& init,
                                         double T, RandomSource& rng);

// Transition probability P(X_{t+s} = to | X_t = from) for a homogeneous
// kernel on a bounded space, through the truncated dominated-rate series
// sum_k Pois(k; s*omega) [P^k]_{from,to} with P = I + Q/omega. The series
// is cut once the Poisson tail mass drops below tail_mass (capped at 1e6
// terms). Desk-scale testing oracle; quadratic in the space volume.
double transition_probability_oracle(const RateKernel& kernel, double omega,
                                     const State& from, const State& to,
                                     double s, double tail_mass = 1e-12);

}  // namespace mjp

#endif
