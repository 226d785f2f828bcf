#include "mjp/model.hpp"

#include <cmath>
#include <cstdlib>

#include "mjp/errors.hpp"

namespace mjp {

SufficientStats complete_data_stats(const Trajectory& traj,
                                    const RateKernel& kernel) {
  const std::size_t n_reactions = kernel.reactions().size();
  SufficientStats stats;
  stats.jump_counts.assign(n_reactions, 0);
  stats.exposures.assign(n_reactions, 0.0);

  const std::size_t n = traj.times.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double t_end = (i + 1 < n) ? traj.times[i + 1] : traj.horizon;
    const State& x = traj.states[i];
    for (std::size_t k = 0; k < n_reactions; ++k) {
      const double h = kernel.structural_factor(k, x);
      if (h > 0.0)
        stats.exposures[k] +=
            h * kernel.time_factor_integral(k, traj.times[i], t_end);
    }
    if (i > 0) {
      bool matched = false;
      for (std::size_t k = 0; k < n_reactions; ++k) {
        if (traj.states[i - 1].plus(kernel.reactions()[k].delta) ==
                traj.states[i] &&
            kernel.structural_factor(k, traj.states[i - 1]) > 0.0) {
          if (matched)
            throw UnsupportedError(
                "ambiguous jump attribution: two reactions share a "
                "displacement");
          stats.jump_counts[k] += 1;
          matched = true;
        }
      }
      if (!matched)
        throw InvariantViolation("trajectory jump outside neighbor structure");
    }
  }
  return stats;
}

State GibbsModel::jump_magnitudes() const {
  const RateKernel& k = kernel();
  State mags(k.dim());
  for (int c = 0; c < k.dim(); ++c) mags[c] = 0;
  for (const Reaction& rn : k.reactions())
    for (int c = 0; c < k.dim(); ++c)
      mags[c] = std::max(mags[c], std::abs(rn.delta[c]));
  return mags;
}

}  // namespace mjp
