#ifndef MJP_ENVELOPES_HPP
#define MJP_ENVELOPES_HPP

#include <cstdint>
#include <vector>

#include "mjp/meanfield.hpp"
#include "mjp/random.hpp"
#include "mjp/state.hpp"
#include "mjp/trajectory.hpp"

namespace mjp {

// Per-epoch auxiliary constraints fed to the filtering engine: restricted
// supports, extra log-weight terms aligned with each support's enumeration,
// and exact state locks that factor the pass into independent segments.
struct PathConstraints {
  std::vector<SupportBox> supports;
  std::vector<std::vector<double>> log_adjust;  // empty per epoch = none
  std::vector<std::uint8_t> bridge_lock;        // 1 at end-point locks
};

// ---------------------------------------------------------------------------
// Truncated-normal deviation radii around the reference dynamics.

struct NormalEnvelopeParams {
  double mu = 1.0;      // smallest mean deviation allowed
  double sigma = 1.0;   // radius scale
  double kappa = 1.0;   // mean reversion, in (0, 1]
};

// Radii u_i and their conditional means, per epoch (index 0 is unused: the
// first epoch is governed by the initial distribution alone) and per
// coordinate.
struct NormalEnvelope {
  std::vector<std::vector<double>> radius;
  std::vector<std::vector<double>> mean;
  double sigma = 1.0;
};

// u_i ~ Normal(mu_i, sigma) truncated to (|x_i - xi(t_i)|, inf), with
// mu_i = max(mu, u_{i-1} - kappa), drawn independently per coordinate.
NormalEnvelope draw_normal_envelope(const AugmentedTrajectory& aug,
                                    const MeanPath& xi,
                                    const NormalEnvelopeParams& params,
                                    RandomSource& rng);

// Integer window {x : |x - xi(t_i)| < u_i} per coordinate, clipped to the
// space; always contains the generating state.
SupportBox normal_window(const NormalEnvelope& env, const MeanPath& xi,
                         std::size_t epoch, double t, const StateSpace& space,
                         const State& generator);

// Truncation-normalizer divisor: adds -log Phi((mu_i - |x - xi|)/sigma) per
// coordinate for every state of `box`, appended onto `out`.
void normal_log_adjust(const NormalEnvelope& env, const MeanPath& xi,
                       std::size_t epoch, double t, const SupportBox& box,
                       std::vector<double>& out);

// ---------------------------------------------------------------------------
// Gamma deviation radii on lagged epochs with autoregressive log-means.

struct GammaEnvelopeParams {
  int alpha = 2;       // integer shape
  double mu = 0.0;     // stationary mean of the log-mean chain
  double sigma = 0.25; // lag-1 deviation of the log-mean chain
  double kappa = 0.5;  // reversion, in (0, 1)
  int lag = 25;        // epochs between evidence points
};

struct GammaEnvelope {
  std::vector<std::size_t> evidence_epochs;      // sorted, subset of 1..m
  std::vector<std::vector<double>> radius;       // [evidence idx][coord]
  std::vector<std::vector<double>> beta;         // gamma rate per coordinate
  int alpha = 2;
};

// Draws the log-mean chain across lagged epochs (random phase), then
// v ~ Gamma(alpha, beta_i) and u_i = |x_i - xi(t_i)| + v per coordinate.
// Requires unit jump magnitudes.
GammaEnvelope draw_gamma_envelope(const AugmentedTrajectory& aug,
                                  const MeanPath& xi,
                                  const GammaEnvelopeParams& params,
                                  const State& jump_magnitudes,
                                  RandomSource& rng);

bool is_evidence_epoch(const GammaEnvelope& env, std::size_t epoch,
                       std::size_t* out_index = nullptr);

SupportBox gamma_window(const GammaEnvelope& env, const MeanPath& xi,
                        std::size_t evidence_index, double t,
                        const StateSpace& space, const State& generator);

// Gamma density factor (u - |x - xi|)^{alpha-1} exp(-beta (u - |x - xi|))
// in log form, per coordinate, appended for every state of `box`. States at
// or beyond the radius get -inf.
void gamma_log_adjust(const GammaEnvelope& env, const MeanPath& xi,
                      std::size_t evidence_index, double t,
                      const SupportBox& box, std::vector<double>& out);

// ---------------------------------------------------------------------------
// Splitting schemes: lock states (bridges) or parts (partitions) at lagged
// epochs so the pass factorizes.

struct SplitScheme {
  enum class Kind { Partition, Bridge };
  Kind kind = Kind::Bridge;
  int lag = 32;        // base lag; randomized per sweep in [0.8, 1.2] * lag
  int part_width = 8;  // Partition: interval width per coordinate
};

// Support constraints at the (randomized) lagged epochs. Bridge locks the
// arrival state exactly; Partition restricts to the part containing it.
// Requires every coordinate to be movable on its own (partition parts must
// stay internally connected).
PathConstraints apply_split(const AugmentedTrajectory& aug,
                            const SplitScheme& scheme, const StateSpace& space,
                            const State& jump_magnitudes, RandomSource& rng);

}  // namespace mjp

#endif
