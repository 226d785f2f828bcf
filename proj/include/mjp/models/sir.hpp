#ifndef MJP_MODELS_SIR_HPP
#define MJP_MODELS_SIR_HPP

#include "mjp/meanfield.hpp"
#include "mjp/model.hpp"

namespace mjp {

// Markovian SIR epidemic on (s, i) with infection rate beta*s*i and removal
// rate gamma*i, observed through its removal times. The initial infection
// time is unknown: the chain keeps its own clock with the first infection
// at zero and rebases itself whenever the start-time move shifts it.
struct SIRConfig {
  int population = 50;
  double beta = 0.04;
  double gamma = 1.0;
  GammaPrior beta_prior{1.0, 0.01};
  GammaPrior gamma_prior{1.0, 0.01};
  double t0_window = 0.0;  // uniform prior width for t1 - t0; 0 = horizon
};

class SIRModel : public GibbsModel {
 public:
  // removal_times are absolute (data clock); horizon_abs is the end of the
  // observation window on that clock.
  SIRModel(SIRConfig config, std::vector<double> removal_times,
           double horizon_abs);

  const RateKernel& kernel() const override { return kernel_; }
  InitialDistribution initial_distribution() const override;
  const ObservationSet* observations() const override { return &obs_; }
  std::vector<std::string> param_names() const override;
  std::vector<double> params() const override;
  void update_params(const Trajectory& traj, RandomSource& rng) override;
  void post_update(ChainState& chain, RandomSource& rng) override;
  void init_chain(ChainState& chain, RandomSource& rng) override;

  double beta() const { return config_.beta; }
  double gamma() const { return config_.gamma; }
  double start_time() const { return t0_abs_; }
  const SIRConfig& config() const { return config_; }
  const std::vector<double>& removal_times() const { return removal_times_; }

  // Rate conditionals given the complete path (exposed for testing):
  // beta  ~ Gamma(a + infections, b + sum s_j i_j dt_j)
  // gamma ~ Gamma(a + removals,   b + sum i_j dt_j)
  struct Conditionals {
    double beta_shape, beta_rate;
    double gamma_shape, gamma_rate;
  };
  Conditionals rate_conditionals(const Trajectory& traj) const;

  // Inverse-CDF draw of the first holding gap t1 - t0 from the truncated
  // exponential with rate beta (N - 1) + gamma on (0, window].
  static double draw_start_gap(double rate, double window, RandomSource& rng);

  // Deterministic (S, I, R) dynamics; params = {beta, gamma}.
  OdeSystem mean_system() const;

 private:
  RateKernel build_kernel() const;
  void rebase_clock(double new_t0);

  SIRConfig config_;
  std::vector<double> removal_times_;  // absolute
  double horizon_abs_;
  double t0_abs_ = 0.0;
  RateKernel kernel_;
  ObservationSet obs_;  // internal clock
};

// Classical single-site Metropolis-Hastings baseline over infection times
// with conjugate rate draws, used for posterior cross-checks. Removal times
// are fixed data; per sweep, ceil(half) of the infection times are updated
// through add/delete/move proposals.
class SIRMetropolisBaseline {
 public:
  SIRMetropolisBaseline(SIRConfig config, std::vector<double> removal_times,
                        double horizon_abs);

  void init(RandomSource& rng);
  void sweep(RandomSource& rng);

  double beta() const { return config_.beta; }
  double gamma() const { return config_.gamma; }
  double acceptance_rate() const {
    return proposals_ == 0 ? 0.0
                           : static_cast<double>(accepts_) / proposals_;
  }
  const std::vector<double>& infection_times() const { return infections_; }

  // Complete-data log likelihood of (infection times, removal times) from
  // the path density; -inf when the configuration is invalid.
  double log_likelihood(const std::vector<double>& infections) const;

 private:
  SIRConfig config_;
  std::vector<double> removals_;  // absolute, sorted
  double horizon_abs_;
  std::vector<double> infections_;  // absolute, sorted; [0] is t0
  std::uint64_t proposals_ = 0, accepts_ = 0;
};

}  // namespace mjp

#endif
