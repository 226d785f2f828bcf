#ifndef MJP_MODEL_HPP
#define MJP_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mjp/observations.hpp"
#include "mjp/random.hpp"
#include "mjp/rate_kernel.hpp"
#include "mjp/trajectory.hpp"

namespace mjp {

struct GammaPrior {
  double shape = 1.0;
  double rate = 0.01;
};

// Complete-data sufficient statistics for conjugate rate updates: per
// reaction, the number of jumps attributed to it and the integrated
// structural exposure over holding intervals.
struct SufficientStats {
  std::vector<std::int64_t> jump_counts;
  std::vector<double> exposures;
};

SufficientStats complete_data_stats(const Trajectory& traj,
                                    const RateKernel& kernel);

// The unit of state advanced by one Gibbs sweep: the latent path plus the
// observation tags pinned to its jumps. Model parameters live inside the
// model object; randomness comes from the stream passed alongside.
struct ChainState {
  Trajectory traj;
  std::vector<int> jump_tags;  // aligned with traj.times, -1 untagged
  std::uint64_t sweep = 0;
};

// Model contract consumed by the Gibbs machinery: a rate kernel bound to
// the current parameters, conjugate parameter conditionals, and enough
// structure to initialize a chain that is consistent with the data.
class GibbsModel {
 public:
  virtual ~GibbsModel() = default;

  virtual const RateKernel& kernel() const = 0;
  virtual InitialDistribution initial_distribution() const = 0;
  virtual const ObservationSet* observations() const = 0;

  virtual std::vector<std::string> param_names() const = 0;
  virtual std::vector<double> params() const = 0;
  // Full-conditional parameter draw given the complete path.
  virtual void update_params(const Trajectory& traj, RandomSource& rng) = 0;
  // Optional extra move after the parameter draw (e.g. shifting the start
  // time of an epidemic, which rebases the whole chain).
  virtual void post_update(ChainState&, RandomSource&) {}

  // Valid starting chain with positive density under the current
  // parameters and compatible with the observations.
  virtual void init_chain(ChainState& chain, RandomSource& rng) = 0;

  // Per-coordinate maximum jump magnitude (drives support expansion).
  State jump_magnitudes() const;

  // Largest exit-rate bound over the states the chain can actually reach;
  // the dominating rate is derived from it. Defaults to the bound over the
  // whole (boxed) space; models with tighter reachable sets override.
  virtual double sup_exit_bound() const { return kernel().max_exit_bound(); }
};

}  // namespace mjp

#endif
