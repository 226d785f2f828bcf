#include "mjp/verify.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "mjp/diagnostics.hpp"
#include "mjp/ffbs.hpp"
#include "mjp/models/birth_death.hpp"
#include "mjp/samplers.hpp"
#include "mjp/simulate.hpp"

namespace mjp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point from) {
  return std::chrono::duration<double>(Clock::now() - from).count();
}

RateKernel three_state_chain() {
  StateSpace space(State{0}, State{2});
  std::vector<double> up = {1.2, 0.7, 0.0};
  std::vector<double> down = {0.0, 0.5, 1.5};
  std::vector<Reaction> rx;
  rx.push_back({"up", State{1}, 1.0,
                [up](const State& x) { return up[static_cast<std::size_t>(x[0])]; },
                false, {}});
  rx.push_back({"down", State{-1}, 1.0,
                [down](const State& x) { return down[static_cast<std::size_t>(x[0])]; },
                false, {}});
  return RateKernel(space, std::move(rx), Seasonality::none());
}

}  // namespace

CheckResult verify_prop1(std::uint64_t seed, int n_samples) {
  const auto start = Clock::now();
  CheckResult result;
  result.name = "prop1-uniformized-vs-oracle";

  RateKernel kernel = three_state_chain();
  const InitialDistribution init = InitialDistribution::point(State{0});
  const double omega = 1.5 * kernel.max_exit_bound();
  RandomSource rng = RandomSource(seed).split(11);

  std::array<double, 3> counts{};
  for (int i = 0; i < n_samples; ++i) {
    AugmentedTrajectory aug =
        simulate_uniformized(kernel, omega, init, 1.0, rng);
    counts[static_cast<std::size_t>(aug.states.back()[0])] += 1.0;
  }
  double max_dev = 0.0;
  std::ostringstream detail;
  for (Coord x = 0; x < 3; ++x) {
    const double expected = transition_probability_oracle(
        kernel, omega, State{0}, State{x}, 1.0);
    const double observed =
        counts[static_cast<std::size_t>(x)] / static_cast<double>(n_samples);
    max_dev = std::max(max_dev, std::fabs(observed - expected));
  }
  detail << "max marginal deviation " << max_dev << " over " << n_samples
         << " draws";
  result.pass = max_dev < 0.01;
  result.detail = detail.str();
  result.seconds = seconds_since(start);
  return result;
}

CheckResult verify_lemma1(std::uint64_t seed, int n_draws) {
  const auto start = Clock::now();
  CheckResult result;
  result.name = "lemma1-mean-square-convergence";
  RandomSource rng = RandomSource(seed).split(13);
  const double kappas[] = {10.0, 100.0, 1000.0, 10000.0};
  Lemma1Report report = lemma1_check(-1.0, 1.0, 2.0, kappas, n_draws, rng);
  std::ostringstream detail;
  detail << "msq:";
  for (const auto& row : report.rows) detail << ' ' << row.sample_msq;
  result.pass = report.pass();
  result.detail = detail.str();
  result.seconds = seconds_since(start);
  return result;
}

namespace {

// Random dense instance with bounded joint support, plus its exhaustive
// path law computed directly from the defining product (independent of the
// filtering code).
struct DenseInstance {
  std::vector<EpochStep> steps;
  InitialDistribution init;
  std::map<std::pair<int, std::pair<Coord, Coord>>, double> table;

  double tw(int epoch, Coord from, Coord to) const {
    const auto it = table.find({epoch, {from, to}});
    return it == table.end() ? 0.0 : it->second;
  }
};

DenseInstance random_instance(RandomSource& rng) {
  // Sizes keep states^epochs <= 64 so 4e5 draws resolve TV at 0.01.
  static constexpr std::pair<int, int> kShapes[] = {
      {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {4, 2}, {4, 3}};
  const auto [n_states, n_epochs] =
      kShapes[rng.uniform_int(std::size(kShapes))];

  DenseInstance inst;
  std::vector<std::pair<State, double>> mass;
  double total = 0.0;
  std::vector<double> raw(static_cast<std::size_t>(n_states));
  for (auto& v : raw) {
    v = rng.uniform(0.1, 1.0);
    total += v;
  }
  for (int s = 0; s < n_states; ++s)
    mass.push_back({State{static_cast<Coord>(s)},
                    raw[static_cast<std::size_t>(s)] / total});
  inst.init = InitialDistribution(mass);
  for (int e = 0; e < n_epochs; ++e) {
    EpochStep step;
    step.time = e;
    step.support =
        SupportBox(State{0}, State{static_cast<Coord>(n_states - 1)});
    step.log_weight.resize(step.support.volume());
    for (auto& lw : step.log_weight) lw = std::log(rng.uniform(0.05, 1.0));
    inst.steps.push_back(step);
    if (e > 0)
      for (Coord a = 0; a < n_states; ++a)
        for (Coord b = 0; b < n_states; ++b)
          inst.table[{e, {a, b}}] = rng.uniform(0.05, 1.0);
  }
  return inst;
}

std::map<std::vector<Coord>, double> enumerate_paths(
    const DenseInstance& inst) {
  std::map<std::vector<Coord>, double> law;
  const int m = static_cast<int>(inst.steps.size());
  std::vector<Coord> path(static_cast<std::size_t>(m));
  double total = 0.0;
  std::function<void(int, double)> rec = [&](int epoch, double w) {
    if (w == 0.0) return;
    if (epoch == m) {
      law[path] += w;
      total += w;
      return;
    }
    const EpochStep& step = inst.steps[static_cast<std::size_t>(epoch)];
    for (std::size_t idx = 0; idx < step.support.volume(); ++idx) {
      const Coord x = step.support.state_at(idx)[0];
      double factor = std::exp(step.state_log_weight(idx));
      if (epoch == 0)
        factor *= inst.init.prob(State{x});
      else
        factor *= inst.tw(epoch, path[static_cast<std::size_t>(epoch - 1)], x);
      path[static_cast<std::size_t>(epoch)] = x;
      rec(epoch + 1, w * factor);
    }
  };
  rec(0, 1.0);
  for (auto& [k, v] : law) v /= total;
  return law;
}

}  // namespace

CheckResult verify_ffbs(std::uint64_t seed, int n_instances, int n_draws) {
  const auto start = Clock::now();
  CheckResult result;
  result.name = "ffbs-vs-enumeration";
  RandomSource rng = RandomSource(seed).split(17);
  // Four pooled draw batches per instance: the largest instances hold 64
  // distinct paths, where a single 1e5 batch has multinomial noise right
  // at the 0.01 decision line; pooling keeps the check discriminating.
  const int n_batches = 4;
  double worst = 0.0;
  for (int inst_idx = 0; inst_idx < n_instances; ++inst_idx) {
    DenseInstance inst = random_instance(rng);
    CallbackTransitionModel model(
        {}, [&inst](const EpochStep& step, const State& from, const State& to) {
          return inst.tw(static_cast<int>(step.time), from[0], to[0]);
        });
    FilterState fs =
        forward_filter<CallbackTransitionModel>(inst.steps, inst.init, model);
    std::map<std::vector<Coord>, double> counts;
    const double total_draws =
        static_cast<double>(n_draws) * static_cast<double>(n_batches);
    for (int batch = 0; batch < n_batches; ++batch) {
      for (int d = 0; d < n_draws; ++d) {
        const std::vector<State> draw = backward_sample<CallbackTransitionModel>(
            fs, inst.steps, model, rng);
        std::vector<Coord> key(draw.size());
        for (std::size_t i = 0; i < draw.size(); ++i) key[i] = draw[i][0];
        counts[key] += 1.0;
      }
    }
    const auto law = enumerate_paths(inst);
    double tv = 0.0;
    for (const auto& [k, p] : law) {
      const auto it = counts.find(k);
      const double phat = it == counts.end() ? 0.0 : it->second / total_draws;
      tv += std::fabs(phat - p);
    }
    for (const auto& [k, c] : counts)
      if (!law.count(k)) tv += c / total_draws;
    worst = std::max(worst, 0.5 * tv);
    if (worst >= 0.01) break;
  }
  std::ostringstream detail;
  detail << "worst joint TV " << worst << " over " << n_instances
         << " instances, " << n_batches << " x " << n_draws << " draws each";
  result.pass = worst < 0.01;
  result.detail = detail.str();
  result.seconds = seconds_since(start);
  return result;
}

CheckResult verify_invariance(std::uint64_t seed, int n_sweeps) {
  const auto start = Clock::now();
  CheckResult result;
  result.name = "sweep-invariance-all-variants";

  BirthDeathConfig cfg;
  cfg.capacity = 5;
  cfg.birth_rate = 1.0;
  cfg.death_rate = 0.4;
  cfg.seasonal = false;
  cfg.horizon = 4.0;

  RandomSource rng = RandomSource(seed).split(19);
  BirthDeathModel reference_model(cfg);
  const double mid = cfg.horizon / 2.0;
  std::vector<double> reference(6, 0.0);
  const int n_ref = 100000;
  for (int i = 0; i < n_ref; ++i) {
    Trajectory traj =
        gillespie(reference_model.kernel(),
                  reference_model.initial_distribution(), cfg.horizon, rng);
    reference[static_cast<std::size_t>(state_at(traj, mid)[0])] += 1.0;
  }
  for (double& p : reference) p /= n_ref;

  struct VariantSetup {
    const char* label;
    SamplerVariant variant;
    PsiOperator psi;
  };
  const VariantSetup setups[] = {
      {"naive", SamplerVariant::Naive, PsiOperator::exit_factor(0.5)},
      {"stationary", SamplerVariant::StationaryReduced,
       PsiOperator::exit_factor(0.5)},
      {"nonstationary", SamplerVariant::NonstationaryReduced,
       PsiOperator::exit_factor(1.0)},
      {"vanilla", SamplerVariant::VanillaUniformization,
       PsiOperator::vanilla()},
  };

  std::ostringstream detail;
  bool pass = true;
  for (const auto& setup : setups) {
    BirthDeathModel model(cfg);
    SamplerConfig config;
    config.variant = setup.variant;
    config.psi = setup.psi;
    ChainState chain;
    model.init_chain(chain, rng);
    std::vector<double> occupancy(6, 0.0);
    for (int s = 0; s < n_sweeps; ++s) {
      resample_trajectory(chain, model, config, {}, rng);
      occupancy[static_cast<std::size_t>(state_at(chain.traj, mid)[0])] += 1.0;
    }
    double tv = 0.0;
    for (std::size_t x = 0; x < 6; ++x)
      tv += std::fabs(occupancy[x] / n_sweeps - reference[x]);
    tv *= 0.5;
    detail << setup.label << " TV " << tv << "; ";
    pass = pass && tv < 0.02;
  }
  result.pass = pass;
  result.detail = detail.str();
  result.seconds = seconds_since(start);
  return result;
}

CheckResult verify_geweke(std::uint64_t seed, int n_samples) {
  const auto start = Clock::now();
  CheckResult result;
  result.name = "geweke-joint-distribution";

  BirthDeathConfig cfg;
  cfg.capacity = 10;
  cfg.birth_rate = 1.0;
  cfg.death_rate = 0.5;
  cfg.seasonal = false;
  cfg.horizon = 4.0;
  cfg.death_prior = {10.0, 20.0};

  SamplerConfig sampler;
  sampler.variant = SamplerVariant::StationaryReduced;
  sampler.psi = PsiOperator::exit_factor(0.5);

  GewekeSettings settings;
  settings.n_forward = n_samples;
  settings.n_gibbs = n_samples;
  settings.n_observations = 4;
  settings.obs_sigma = 1.0;

  // Intact sampler (probabilistic at the 3-sigma level; one retry).
  RandomSource rng = RandomSource(seed).split(23);
  GewekeReport clean = geweke_test(cfg, sampler, settings, rng);
  if (clean.max_abs_z() >= 3.0) {
    RandomSource retry = RandomSource(seed).split(29);
    clean = geweke_test(cfg, sampler, settings, retry);
  }

  // Deliberately broken weight attachment must be flagged.
  SamplerConfig broken = sampler;
  broken.debug_weight_shift = 1;
  RandomSource rng2 = RandomSource(seed).split(31);
  GewekeReport bad = geweke_test(cfg, broken, settings, rng2);

  std::ostringstream detail;
  detail << "intact |z| = (" << clean.z_param << ", " << clean.z_jumps
         << "), shifted-weight |z| = (" << bad.z_param << ", " << bad.z_jumps
         << ")";
  result.pass = clean.max_abs_z() < 3.0 && bad.max_abs_z() > 5.0;
  result.detail = detail.str();
  result.seconds = seconds_since(start);
  return result;
}

}  // namespace mjp
