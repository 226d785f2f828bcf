#ifndef MJP_SAMPLERS_HPP
#define MJP_SAMPLERS_HPP

#include <optional>
#include <vector>

#include "mjp/envelopes.hpp"
#include "mjp/ffbs.hpp"
#include "mjp/meanfield.hpp"
#include "mjp/model.hpp"
#include "mjp/observations.hpp"

namespace mjp {

enum class SamplerVariant {
  Naive,                  // weighting times, any kernel
  StationaryReduced,      // Poisson counts, homogeneous kernels only
  NonstationaryReduced,   // closed-form exponential weights, no dominating rate
  VanillaUniformization,  // psi = omega - exit; plain uniformization
};

// Candidate-time intensity psi(t, x) > 0. The three presets are the ones
// exercised in the experiments: proportional to the exit rate, half of it,
// and the uniformization complement. A small floor keeps psi positive on
// absorbing states.
class PsiOperator {
 public:
  enum class Kind { ExitFactor, Complement, Constant };

  static PsiOperator exit_factor(double factor);
  static PsiOperator vanilla();  // omega - exit
  static PsiOperator constant(double value);

  Kind kind() const { return kind_; }
  double parameter() const { return value_; }
  double floor_value() const { return floor_; }

  double value(const RateKernel& kernel, double omega, const State& x,
               double t) const;
  double max_over_time(const RateKernel& kernel, double omega,
                       const State& x) const;
  double min_over_time(const RateKernel& kernel, double omega,
                       const State& x) const;
  double integral(const RateKernel& kernel, double omega, const State& x,
                  double a, double b) const;

 private:
  Kind kind_ = Kind::ExitFactor;
  double value_ = 1.0;
  double floor_ = 1e-8;
};

struct SamplerConfig {
  SamplerVariant variant = SamplerVariant::VanillaUniformization;
  double omega_factor = 1.5;   // omega = factor * sup exit over the space
  PsiOperator psi = PsiOperator::vanilla();

  std::optional<NormalEnvelopeParams> normal_envelope;
  std::optional<GammaEnvelopeParams> gamma_envelope;
  std::optional<SplitScheme> split;

  int envelope_retries = 25;
  std::size_t filter_max_bytes = std::size_t{2} << 30;

  // Test instrumentation: attaches interval-i weights to epoch i + shift.
  // Zero in all real runs; the joint-distribution audit uses 1 to verify it
  // can detect a broken sampler.
  int debug_weight_shift = 0;

  // When set, each sweep records the end-point locks it imposed so callers
  // can verify the resampled path passes through them.
  std::vector<std::pair<double, State>>* lock_trace = nullptr;
};

// Per-epoch random weighting evidence (variant dependent).
struct WeightingEvidence {
  std::vector<std::vector<double>> times;  // Naive: weighting times per epoch
  std::vector<std::int64_t> counts;        // StationaryReduced
};

// Run-level inputs shared by every sweep of a chain.
struct SweepContext {
  const MeanPath* mean_path = nullptr;  // required by envelope schemes
  double mean_path_offset = 0.0;        // internal-to-reference time shift
};

// Dominating rate for the current kernel: max(factor, 1 + 1e-6) times the
// largest exit-rate bound over the (bounded) space.
double resolve_omega(const RateKernel& kernel, double factor);

// Step 1: attach controlled-intensity candidate epochs to the current path.
// The output contains the input jumps (with their observation tags) as a
// subsequence; virtual epochs carry the holding state.
AugmentedTrajectory sample_candidate_times(const Trajectory& traj,
                                           const std::vector<int>& jump_tags,
                                           const RateKernel& kernel,
                                           const PsiOperator& psi,
                                           double omega, RandomSource& rng);

// Step 2: compensating evidence. Naive draws weighting times from the rate
// omega - exit - psi; StationaryReduced keeps only Poisson counts; the
// other variants need no randomness.
WeightingEvidence sample_compensation(const AugmentedTrajectory& aug,
                                      double omega, const PsiOperator& psi,
                                      const RateKernel& kernel,
                                      RandomSource& rng,
                                      SamplerVariant variant);

// Step 3: assemble the filtering epochs: supports (constraints intersected
// with exact reachability cones), variant importance weights, binned state
// observations and envelope adjustments.
std::vector<EpochStep> build_epoch_steps(const AugmentedTrajectory& aug,
                                         const WeightingEvidence& evidence,
                                         const SamplerConfig& config,
                                         double omega,
                                         const RateKernel& kernel,
                                         const ObservationSet* obs,
                                         const InitialDistribution& init,
                                         const State& jump_magnitudes,
                                         const PathConstraints* constraints);

// Transition weights used by the sweeps: diagonal psi(t, x), off-diagonal
// jump rates, with jump-observation rows substituted at tagged epochs.
class SweepTransitions {
 public:
  SweepTransitions(const RateKernel& kernel, const PsiOperator& psi,
                   double omega, const ObservationSet* obs);

  std::span<const State> jump_deltas() const { return deltas_; }
  double transition_weight(const EpochStep& step, const State& from,
                           const State& to) const;

 private:
  double seasonal_at(double t) const;
  double rate_at(std::size_t k, const State& x, double t) const;
  double exit_at(const State& x, double t) const;

  const RateKernel* kernel_;
  PsiOperator psi_;
  double omega_;
  const ObservationSet* obs_;
  std::vector<State> deltas_;
  bool jump_obs_ = false;
  // One instance serves one chain sweep; the single-entry seasonal cache
  // is not shared across threads.
  mutable double cache_t_ = std::numeric_limits<double>::quiet_NaN();
  mutable double cache_r_ = 1.0;
};

// Full trajectory resample: candidate times, compensation, constraint
// draw, filtering and backward sampling, virtual-jump removal. Retries
// with a fresh envelope on infeasibility, then rethrows.
void resample_trajectory(ChainState& chain, const GibbsModel& model,
                         const SamplerConfig& config, const SweepContext& ctx,
                         RandomSource& rng);

// One Gibbs sweep: trajectory resample, conjugate parameter draw, optional
// model-specific extra move.
void gibbs_sweep(ChainState& chain, GibbsModel& model,
                 const SamplerConfig& config, const SweepContext& ctx,
                 RandomSource& rng);

}  // namespace mjp

#endif
