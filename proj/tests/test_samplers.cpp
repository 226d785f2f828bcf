#include <doctest.h>

#include <cmath>
#include <map>

#include "mjp/models/birth_death.hpp"
#include "mjp/models/lotka_volterra.hpp"
#include "mjp/models/sir.hpp"
#include "mjp/samplers.hpp"
#include "mjp/simulate.hpp"

using namespace mjp;

namespace {

BirthDeathConfig small_bd() {
  BirthDeathConfig cfg;
  cfg.capacity = 5;
  cfg.birth_rate = 1.0;
  cfg.death_rate = 0.4;
  cfg.seasonal = false;
  cfg.horizon = 4.0;
  return cfg;
}

// Occupancy of X at time t over a set of trajectories.
std::vector<double> occupancy(const std::vector<Coord>& draws, int n_states) {
  std::vector<double> probs(static_cast<std::size_t>(n_states), 0.0);
  for (Coord value : draws) probs[static_cast<std::size_t>(value)] += 1.0;
  for (double& p : probs) p /= static_cast<double>(draws.size());
  return probs;
}

double total_variation(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double tv = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) tv += std::fabs(a[i] - b[i]);
  return 0.5 * tv;
}

// Stationarity check: start chains at a direct draw, sweep repeatedly, and
// compare the X_{T/2} occupancy against direct simulation. Returns the
// occupancy TV distance and an autocorrelation-adjusted z score of the
// mean, which is far more sensitive to systematic weight bias.
struct InvarianceResult {
  double tv;
  double z_mean;
};

InvarianceResult sweep_invariance(BirthDeathModel& model,
                                  const SamplerConfig& config,
                                  const SweepContext& ctx, int n_sweeps,
                                  std::uint64_t seed) {
  RandomSource rng(seed);
  const double mid = model.config().horizon / 2.0;

  std::vector<Coord> reference;
  for (int i = 0; i < 20000; ++i) {
    Trajectory traj = gillespie(model.kernel(), model.initial_distribution(),
                                model.config().horizon, rng);
    reference.push_back(state_at(traj, mid)[0]);
  }

  ChainState chain;
  model.init_chain(chain, rng);
  std::vector<Coord> sampled;
  for (int s = 0; s < n_sweeps; ++s) {
    resample_trajectory(chain, model, config, ctx, rng);
    sampled.push_back(state_at(chain.traj, mid)[0]);
  }
  const int n = model.config().capacity + 1;

  auto moments = [](const std::vector<Coord>& v) {
    double mean = 0.0, var = 0.0;
    for (Coord x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (Coord x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    return std::pair<double, double>{mean, var};
  };
  const auto [m_ref, v_ref] = moments(reference);
  const auto [m_smp, v_smp] = moments(sampled);
  // Effective count of the autocorrelated sweep output via batch means.
  const std::size_t n_batches = 50;
  const std::size_t batch = sampled.size() / n_batches;
  std::vector<double> batch_means;
  for (std::size_t b = 0; b < n_batches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * batch; i < (b + 1) * batch; ++i) s += sampled[i];
    batch_means.push_back(s / static_cast<double>(batch));
  }
  double bvar = 0.0;
  for (double bm : batch_means) bvar += (bm - m_smp) * (bm - m_smp);
  bvar /= static_cast<double>(n_batches - 1);
  const double se =
      std::sqrt(bvar / static_cast<double>(n_batches) +
                v_ref / static_cast<double>(reference.size()));
  InvarianceResult res;
  res.tv = total_variation(occupancy(sampled, n), occupancy(reference, n));
  res.z_mean = (m_smp - m_ref) / se;
  (void)v_smp;
  return res;
}

double sweep_invariance_tv(BirthDeathModel& model, const SamplerConfig& config,
                           const SweepContext& ctx, int n_sweeps,
                           std::uint64_t seed) {
  return sweep_invariance(model, config, ctx, n_sweeps, seed).tv;
}

}  // namespace

TEST_SUITE("samplers") {

TEST_CASE("constant psi adds a poisson number of candidate epochs") {
  BirthDeathModel model(small_bd());
  RandomSource rng(11);
  Trajectory traj;
  traj.horizon = 4.0;
  traj.times = {0.0};
  traj.states = {State{3}};
  const PsiOperator psi = PsiOperator::constant(2.5);
  const double mean_expected = 2.5 * 4.0;
  const int reps = 2000;
  double total = 0.0;
  for (int i = 0; i < reps; ++i) {
    AugmentedTrajectory aug =
        sample_candidate_times(traj, {}, model.kernel(), psi, 0.0, rng);
    total += static_cast<double>(aug.times.size() - 1);
  }
  const double mean = total / reps;
  const double se = std::sqrt(mean_expected / reps);
  CHECK(std::fabs(mean - mean_expected) < 3 * se);
}

TEST_CASE("vanishing psi adds no candidate epochs") {
  BirthDeathModel model(small_bd());
  RandomSource rng(13);
  Trajectory traj;
  traj.horizon = 4.0;
  traj.times = {0.0, 1.5};
  traj.states = {State{3}, State{4}};
  AugmentedTrajectory aug = sample_candidate_times(
      traj, {}, model.kernel(), PsiOperator::constant(1e-12), 0.0, rng);
  CHECK(aug.times.size() == 2);  // just the original epochs
  CHECK(aug.states[1] == State{4});
}

TEST_CASE("exit-rate psi roughly doubles the epoch count") {
  BirthDeathModel model(small_bd());
  RandomSource rng(17);
  const PsiOperator psi = PsiOperator::exit_factor(1.0);
  double jumps = 0.0, added = 0.0;
  for (int rep = 0; rep < 400; ++rep) {
    Trajectory traj = gillespie(model.kernel(), model.initial_distribution(),
                                4.0, rng);
    AugmentedTrajectory aug =
        sample_candidate_times(traj, {}, model.kernel(), psi, 0.0, rng);
    jumps += static_cast<double>(traj.n_jumps());
    added += static_cast<double>(aug.times.size() - traj.times.size());
  }
  // E[#jumps] equals the expected integrated exit rate, which is exactly
  // the candidate intensity here.
  CHECK(added / jumps == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("compensating counts have the advertised poisson mean") {
  // Two-state chain with constant exit rate 2, psi = 2, omega = 10: counts
  // over a unit interval are Poisson(6).
  StateSpace space(State{0}, State{1});
  std::vector<Reaction> rx;
  rx.push_back({"up", State{1}, 2.0, [](const State&) { return 1.0; }, false, {}});
  rx.push_back({"down", State{-1}, 2.0, [](const State&) { return 1.0; }, false, {}});
  RateKernel kernel(space, std::move(rx), Seasonality::none());

  AugmentedTrajectory aug;
  aug.horizon = 1.0;
  aug.times = {0.0};
  aug.states = {State{0}};
  aug.obs_tag = {-1};

  RandomSource rng(19);
  const PsiOperator psi = PsiOperator::constant(2.0);
  const int reps = 3000;
  double total = 0.0;
  for (int i = 0; i < reps; ++i) {
    WeightingEvidence ev = sample_compensation(
        aug, 10.0, psi, kernel, rng, SamplerVariant::StationaryReduced);
    REQUIRE(ev.counts.size() == 1);
    total += static_cast<double>(ev.counts[0]);
  }
  const double mean = total / reps;
  CHECK(std::fabs(mean - 6.0) < 3 * std::sqrt(6.0 / reps));
}

TEST_CASE("vanilla psi produces zero compensating counts") {
  BirthDeathConfig cfg = small_bd();
  BirthDeathModel model(cfg);
  RandomSource rng(23);
  AugmentedTrajectory aug;
  aug.horizon = 4.0;
  aug.times = {0.0, 1.0, 2.0};
  aug.states = {State{3}, State{2}, State{3}};
  aug.obs_tag = {-1, -1, -1};
  const double omega = resolve_omega(model.kernel(), 1.5);
  WeightingEvidence ev =
      sample_compensation(aug, omega, PsiOperator::vanilla(), model.kernel(),
                          rng, SamplerVariant::StationaryReduced);
  for (auto k : ev.counts) CHECK(k == 0);
}

TEST_CASE("stationary weight arithmetic") {
  // omega = 10, exit = 2, psi = 2, k = 3 epochs -> (1 - 4/10)^3 = 0.216.
  StateSpace space(State{0}, State{1});
  std::vector<Reaction> rx;
  rx.push_back({"up", State{1}, 2.0, [](const State&) { return 1.0; }, false, {}});
  rx.push_back({"down", State{-1}, 2.0, [](const State&) { return 1.0; }, false, {}});
  RateKernel kernel(space, std::move(rx), Seasonality::none());

  AugmentedTrajectory aug;
  aug.horizon = 1.0;
  aug.times = {0.0};
  aug.states = {State{0}};
  aug.obs_tag = {-1};

  WeightingEvidence ev;
  ev.counts = {3};
  SamplerConfig config;
  config.variant = SamplerVariant::StationaryReduced;
  config.psi = PsiOperator::constant(2.0);
  auto steps = build_epoch_steps(aug, ev, config, 10.0, kernel, nullptr,
                                 InitialDistribution::point(State{0}),
                                 State{1}, nullptr);
  REQUIRE(steps.size() == 1);
  const std::size_t idx = steps[0].support.index_of(State{0});
  CHECK(std::exp(steps[0].log_weight[idx]) ==
        doctest::Approx(0.216).epsilon(1e-12));
}

TEST_CASE("vanilla transition weights are the uniformization matrix") {
  BirthDeathModel model(small_bd());
  const double omega = resolve_omega(model.kernel(), 1.5);
  SweepTransitions trans(model.kernel(), PsiOperator::vanilla(), omega,
                         nullptr);
  EpochStep step;
  step.time = 1.0;
  step.support = SupportBox(State{0}, State{5});
  const State x{2};
  const double self = trans.transition_weight(step, x, x);
  CHECK(self ==
        doctest::Approx(omega - model.kernel().exit_rate(x, 1.0)));
  CHECK(trans.transition_weight(step, x, State{3}) ==
        doctest::Approx(model.kernel().off_rate(x, State{3}, 1.0)));
  CHECK(trans.transition_weight(step, x, State{5}) == 0.0);
}

TEST_CASE("reduced nonstationary weights match the stationary count limit") {
  // E[(1 - (exit + psi)/omega)^k] with k ~ Poisson((omega - exit' - psi')dt)
  // approaches exp(-(exit + psi) dt) as omega grows.
  StateSpace space(State{0}, State{3});
  std::vector<Reaction> rx;
  rx.push_back({"up", State{1}, 1.3, [](const State&) { return 1.0; }, false, {}});
  rx.push_back({"down", State{-1}, 0.8,
                [](const State& x) { return static_cast<double>(x[0]); },
                false, {}});
  RateKernel kernel(space, std::move(rx), Seasonality::none());
  RandomSource rng(29);

  const State current{1};
  const State candidate{2};
  const double dt = 0.7;
  const PsiOperator psi = PsiOperator::exit_factor(0.5);
  const double omega = 1e4 * kernel.max_exit_bound();

  const double comp_rate = omega - kernel.exit_rate(current, 0.0) -
                           psi.value(kernel, omega, current, 0.0);
  const double base = 1.0 - (kernel.exit_rate(candidate, 0.0) +
                             psi.value(kernel, omega, candidate, 0.0)) /
                                omega;
  double mean = 0.0;
  const int reps = 4000;
  for (int i = 0; i < reps; ++i)
    mean += std::pow(base, static_cast<double>(rng.poisson(comp_rate * dt)));
  mean /= reps;
  const double exp_weight =
      std::exp(-(kernel.exit_rate(candidate, 0.0) +
                 psi.value(kernel, omega, candidate, 0.0)) *
               dt);
  CHECK(mean == doctest::Approx(exp_weight).epsilon(0.02));
}

TEST_CASE("sweeps preserve the path law: vanilla uniformization") {
  BirthDeathModel model(small_bd());
  SamplerConfig config;
  config.variant = SamplerVariant::VanillaUniformization;
  CHECK(sweep_invariance_tv(model, config, {}, 2500, 101) < 0.07);
}

TEST_CASE("sweeps preserve the path law: naive weighting times") {
  BirthDeathModel model(small_bd());
  SamplerConfig config;
  config.variant = SamplerVariant::Naive;
  config.psi = PsiOperator::exit_factor(0.5);
  CHECK(sweep_invariance_tv(model, config, {}, 2500, 103) < 0.07);
}

TEST_CASE("sweeps preserve the path law: stationary counts") {
  BirthDeathModel model(small_bd());
  SamplerConfig config;
  config.variant = SamplerVariant::StationaryReduced;
  config.psi = PsiOperator::exit_factor(0.5);
  CHECK(sweep_invariance_tv(model, config, {}, 2500, 107) < 0.07);
}

TEST_CASE("sweeps preserve the path law: nonstationary reduced") {
  BirthDeathModel model(small_bd());
  SamplerConfig config;
  config.variant = SamplerVariant::NonstationaryReduced;
  config.psi = PsiOperator::exit_factor(1.0);
  CHECK(sweep_invariance_tv(model, config, {}, 2500, 109) < 0.07);
}

TEST_CASE("sweeps preserve the path law under a normal envelope") {
  BirthDeathModel model(small_bd());
  // Reference dynamics from the model ODE at the true parameter.
  OdeSystem system = model.mean_system();
  const std::vector<double> p = {model.death_rate()};
  MeanPath xi = integrate(system, p, model.config().horizon, 0.01);
  SamplerConfig config;
  config.variant = SamplerVariant::NonstationaryReduced;
  config.psi = PsiOperator::exit_factor(1.0);
  config.normal_envelope = NormalEnvelopeParams{2.0, 1.0, 1.0};
  SweepContext ctx;
  ctx.mean_path = &xi;
  CHECK(sweep_invariance_tv(model, config, ctx, 2500, 113) < 0.07);
}

TEST_CASE("sweeps preserve the path law under a gamma envelope") {
  BirthDeathModel model(small_bd());
  OdeSystem system = model.mean_system();
  const std::vector<double> p = {model.death_rate()};
  MeanPath xi = integrate(system, p, model.config().horizon, 0.01);
  SamplerConfig config;
  config.variant = SamplerVariant::StationaryReduced;
  config.psi = PsiOperator::exit_factor(0.5);
  GammaEnvelopeParams gp;
  gp.alpha = 2;
  gp.mu = std::log(2.0);
  gp.sigma = 0.3;
  gp.kappa = 0.5;
  gp.lag = 4;
  config.gamma_envelope = gp;
  SweepContext ctx;
  ctx.mean_path = &xi;
  CHECK(sweep_invariance_tv(model, config, ctx, 2500, 127) < 0.07);
}

TEST_CASE("sweeps preserve the path law under bridge splitting") {
  BirthDeathModel model(small_bd());
  SamplerConfig config;
  config.variant = SamplerVariant::VanillaUniformization;
  SplitScheme scheme;
  scheme.kind = SplitScheme::Kind::Bridge;
  scheme.lag = 6;
  config.split = scheme;
  CHECK(sweep_invariance_tv(model, config, {}, 3000, 131) < 0.07);
}

TEST_CASE("sweeps preserve the path law under partition splitting") {
  BirthDeathModel model(small_bd());
  SamplerConfig config;
  config.variant = SamplerVariant::VanillaUniformization;
  SplitScheme scheme;
  scheme.kind = SplitScheme::Kind::Partition;
  scheme.lag = 6;
  scheme.part_width = 3;
  config.split = scheme;
  CHECK(sweep_invariance_tv(model, config, {}, 3000, 137) < 0.07);
}

TEST_CASE("with psi = omega - exit all variants reduce to uniformization") {
  // On a stationary kernel the weighting evidence degenerates (no times,
  // zero counts), so Naive, StationaryReduced and VanillaUniformization
  // run the same filter; their sweep outputs must be identically
  // distributed. Compare jump-count marginals pairwise.
  StateSpace space(State{0}, State{2});
  auto chain3 = [&]() {
    std::vector<Reaction> rx;
    std::vector<double> up = {1.1, 0.6, 0.0};
    std::vector<double> down = {0.0, 0.4, 1.3};
    rx.push_back({"up", State{1}, 1.0,
                  StructuralFactor([up](const State& x) {
                    return up[static_cast<std::size_t>(x[0])];
                  }),
                  false, {}});
    rx.push_back({"down", State{-1}, 1.0,
                  StructuralFactor([down](const State& x) {
                    return down[static_cast<std::size_t>(x[0])];
                  }),
                  false, {}});
    return RateKernel(space, std::move(rx), Seasonality::none());
  };

  struct ToyModel : GibbsModel {
    RateKernel k;
    explicit ToyModel(RateKernel kernel) : k(std::move(kernel)) {}
    const RateKernel& kernel() const override { return k; }
    InitialDistribution initial_distribution() const override {
      return InitialDistribution::point(State{0});
    }
    const ObservationSet* observations() const override { return nullptr; }
    std::vector<std::string> param_names() const override { return {}; }
    std::vector<double> params() const override { return {}; }
    void update_params(const Trajectory&, RandomSource&) override {}
    void init_chain(ChainState& chain, RandomSource& rng) override {
      chain.traj = gillespie(k, initial_distribution(), 3.0, rng);
      chain.jump_tags.assign(chain.traj.times.size(), -1);
    }
  };

  const SamplerVariant variants[] = {SamplerVariant::Naive,
                                     SamplerVariant::StationaryReduced,
                                     SamplerVariant::VanillaUniformization};
  std::vector<std::vector<double>> jump_hist;
  for (SamplerVariant variant : variants) {
    ToyModel model(chain3());
    SamplerConfig config;
    config.variant = variant;
    config.psi = PsiOperator::vanilla();
    RandomSource rng(163);
    ChainState chain;
    model.init_chain(chain, rng);
    std::vector<double> hist(40, 0.0);
    const int n_sweeps = 50000;
    for (int s = 0; s < n_sweeps; ++s) {
      resample_trajectory(chain, model, config, {}, rng);
      const std::size_t n = std::min<std::size_t>(chain.traj.n_jumps(), 39);
      hist[n] += 1.0 / n_sweeps;
    }
    jump_hist.push_back(std::move(hist));
  }
  for (std::size_t a = 0; a < jump_hist.size(); ++a) {
    for (std::size_t b = a + 1; b < jump_hist.size(); ++b) {
      double tv = 0.0;
      for (std::size_t i = 0; i < 40; ++i)
        tv += std::fabs(jump_hist[a][i] - jump_hist[b][i]);
      CHECK(0.5 * tv < 0.02);
    }
  }
}

TEST_CASE("lv bridge sweeps preserve the bivariate path law") {
  LotkaVolterraConfig cfg;
  cfg.bound = 8;
  cfg.seasonal = true;
  cfg.horizon = 3.0;
  cfg.prey_birth = 0.4;
  cfg.predation = 0.08;
  cfg.predator_birth = 0.08;
  cfg.predator_death = 0.3;
  cfg.initial = State{5, 3};
  LotkaVolterraModel model(cfg);

  RandomSource rng(211);
  const double mid = cfg.horizon / 2.0;
  // Reference occupancy of the prey marginal at mid-horizon.
  std::vector<double> ref(9, 0.0);
  const int n_ref = 30000;
  for (int i = 0; i < n_ref; ++i) {
    Trajectory traj = gillespie(model.kernel(), model.initial_distribution(),
                                cfg.horizon, rng);
    ref[static_cast<std::size_t>(state_at(traj, mid)[0])] += 1.0;
  }
  for (double& p : ref) p /= n_ref;

  SamplerConfig config;
  config.variant = SamplerVariant::NonstationaryReduced;
  config.psi = PsiOperator::exit_factor(0.5);
  config.split = SplitScheme{SplitScheme::Kind::Bridge, 8, 4};
  ChainState chain;
  model.init_chain(chain, rng);
  std::vector<double> occ(9, 0.0);
  const int n_sweeps = 4000;
  for (int s = 0; s < n_sweeps; ++s) {
    resample_trajectory(chain, model, config, {}, rng);
    occ[static_cast<std::size_t>(state_at(chain.traj, mid)[0])] += 1.0;
  }
  double tv = 0.0;
  for (std::size_t x = 0; x < 9; ++x)
    tv += std::fabs(occ[x] / n_sweeps - ref[x]);
  CHECK(0.5 * tv < 0.06);
}

TEST_CASE("locked removal epochs always resample as removals") {
  SIRConfig cfg;
  cfg.population = 20;
  cfg.beta = 0.1;
  cfg.gamma = 1.0;
  std::vector<double> removals = {1.0, 1.7, 2.1, 3.0};
  SIRModel model(cfg, removals, 4.0);
  SamplerConfig config;
  config.variant = SamplerVariant::StationaryReduced;
  config.psi = PsiOperator::exit_factor(0.5);
  RandomSource rng(139);
  ChainState chain;
  model.init_chain(chain, rng);
  for (int s = 0; s < 60; ++s) {
    resample_trajectory(chain, model, config, {}, rng);
    // Exactly one tagged removal jump per observation.
    std::vector<int> count(removals.size(), 0);
    for (std::size_t i = 1; i < chain.traj.times.size(); ++i) {
      const int tag = chain.jump_tags[i];
      if (tag >= 0) {
        ++count[static_cast<std::size_t>(tag)];
        // Tagged jumps are removals: i decreases, s constant.
        CHECK(chain.traj.states[i][1] == chain.traj.states[i - 1][1] - 1);
        CHECK(chain.traj.states[i][0] == chain.traj.states[i - 1][0]);
      } else {
        CHECK(chain.traj.states[i][1] == chain.traj.states[i - 1][1] + 1);
      }
    }
    for (int c : count) CHECK(c == 1);
    // The infective count stays positive until the final removal.
    for (std::size_t i = 0; i + 1 < chain.traj.times.size(); ++i)
      CHECK(chain.traj.states[i][1] >= 1);
  }
}

TEST_CASE("conjugate death-rate draw matches the closed form") {
  // Fixed path: 2 -> 1 -> 0 with deaths at t = 1 and t = 3, horizon 4.
  // Exposure = 2*1 + 1*2 + 0*1 = 4; prior Gamma(1,1) -> Gamma(3,5).
  BirthDeathConfig cfg;
  cfg.capacity = 5;
  cfg.birth_rate = 0.0;
  cfg.death_rate = 0.3;
  cfg.seasonal = false;
  cfg.horizon = 4.0;
  cfg.death_prior = {1.0, 1.0};
  BirthDeathModel model(cfg);
  Trajectory traj;
  traj.horizon = 4.0;
  traj.times = {0.0, 1.0, 3.0};
  traj.states = {State{2}, State{1}, State{0}};

  auto cond = model.death_conditional(traj);
  CHECK(cond.shape == doctest::Approx(3.0));
  CHECK(cond.rate == doctest::Approx(5.0));

  RandomSource rng(149);
  const int n = 10000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.gamma(cond.shape, cond.rate);
  const double se = std::sqrt(3.0 / 25.0 / n);
  CHECK(std::fabs(sum / n - 0.6) < 3 * se);
}

TEST_CASE("zero-jump trajectory reduces the conditional to exposure tilting") {
  BirthDeathConfig cfg = small_bd();
  cfg.death_prior = {2.0, 3.0};
  BirthDeathModel model(cfg);
  Trajectory traj;
  traj.horizon = 4.0;
  traj.times = {0.0};
  traj.states = {State{5}};
  auto cond = model.death_conditional(traj);
  CHECK(cond.shape == doctest::Approx(2.0));  // prior shape, no deaths
  CHECK(cond.rate > 3.0);                     // prior rate plus exposure
}

TEST_CASE("the off-by-one weight mutation visibly breaks the sweep law") {
  BirthDeathConfig cfg = small_bd();
  cfg.death_rate = 0.8;  // heavier weights make the misattachment visible
  SamplerConfig config;
  config.variant = SamplerVariant::NonstationaryReduced;
  config.psi = PsiOperator::exit_factor(1.0);

  BirthDeathModel clean(cfg);
  InvarianceResult ok = sweep_invariance(clean, config, {}, 6000, 157);
  CHECK(std::fabs(ok.z_mean) < 3.5);

  config.debug_weight_shift = 1;
  BirthDeathModel broken(cfg);
  InvarianceResult bad = sweep_invariance(broken, config, {}, 6000, 157);
  CHECK(std::fabs(bad.z_mean) > 4.0);
}

TEST_CASE("infeasible constraints raise after the retry budget") {
  BirthDeathModel model(small_bd());
  // Mean path far outside the reachable set with a tiny envelope cannot
  // produce a window containing the current path... the window is widened
  // to keep the generator inside, so instead force infeasibility through a
  // singleton-free split: not constructible. Use an observation instead.
  ObservationSet obs;
  obs.kind = ObservationSet::Kind::ExactState;
  obs.times = {2.0};
  obs.values = {{4.5}};  // not an integer state: impossible exact match
  model.set_observations(obs);
  SamplerConfig config;
  config.variant = SamplerVariant::VanillaUniformization;
  RandomSource rng(151);
  ChainState chain;
  model.init_chain(chain, rng);
  CHECK_THROWS_AS(resample_trajectory(chain, model, config, {}, rng),
                  InfeasibleFilter);
}

}  // TEST_SUITE
