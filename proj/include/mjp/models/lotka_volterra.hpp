#ifndef MJP_MODELS_LOTKA_VOLTERRA_HPP
#define MJP_MODELS_LOTKA_VOLTERRA_HPP

#include <array>
#include <optional>

#include "mjp/meanfield.hpp"
#include "mjp/model.hpp"

namespace mjp {

// Stochastic predator-prey kinetics on [0,N]^2 with four jump channels
// (prey birth, predation, predator birth, predator death), every rate
// modulated by the shared seasonal factor. All four rates carry independent
// Gamma priors and conjugate conditionals.
struct LotkaVolterraConfig {
  int bound = 60;  // per-species cap
  double prey_birth = 0.125;
  double predation = 0.005;
  double predator_birth = 0.005;
  double predator_death = 0.1;
  bool seasonal = true;
  double horizon = 12.0;
  std::array<GammaPrior, 4> priors{};
  State initial{1, 1};
};

class LotkaVolterraModel : public GibbsModel {
 public:
  explicit LotkaVolterraModel(LotkaVolterraConfig config);

  void set_observations(ObservationSet obs) { obs_ = std::move(obs); }

  const RateKernel& kernel() const override { return kernel_; }
  InitialDistribution initial_distribution() const override;
  const ObservationSet* observations() const override {
    return obs_ ? &*obs_ : nullptr;
  }
  std::vector<std::string> param_names() const override;
  std::vector<double> params() const override;
  void update_params(const Trajectory& traj, RandomSource& rng) override;
  void init_chain(ChainState& chain, RandomSource& rng) override;

  const LotkaVolterraConfig& config() const { return config_; }

  // Mean dynamics with params = {prey_birth, predation, predator_birth,
  // predator_death}.
  OdeSystem mean_system() const;

 private:
  RateKernel build_kernel() const;

  LotkaVolterraConfig config_;
  RateKernel kernel_;
  std::optional<ObservationSet> obs_;
};

}  // namespace mjp

#endif
