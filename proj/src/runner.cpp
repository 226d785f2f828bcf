#include "mjp/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "mjp/csv.hpp"
#include "mjp/errors.hpp"
#include "mjp/models/birth_death.hpp"
#include "mjp/models/lotka_volterra.hpp"
#include "mjp/models/sir.hpp"
#include "mjp/simulate.hpp"
#include "mjp/verify.hpp"

namespace mjp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point from) {
  return std::chrono::duration<double>(Clock::now() - from).count();
}

std::vector<double> spaced_times(int count, double horizon) {
  std::vector<double> out;
  for (int r = 1; r <= count; ++r)
    out.push_back(horizon * r / static_cast<double>(count));
  return out;
}

ObservationSet::Kind data_kind(const RunConfig& config) {
  if (config.data.kind == "noisy_state")
    return ObservationSet::Kind::NoisyState;
  if (config.data.kind == "exact_state")
    return ObservationSet::Kind::ExactState;
  return ObservationSet::Kind::JumpTimes;
}

}  // namespace

Dataset simulate_dataset(const RunConfig& config, RandomSource& rng) {
  Dataset ds;
  const auto& mc = config.model;

  if (mc.kind == "birth_death") {
    BirthDeathConfig bd;
    bd.capacity = mc.capacity;
    bd.birth_rate = mc.birth;
    bd.death_rate = mc.death;
    bd.seasonal = mc.seasonal;
    bd.horizon = mc.horizon;
    BirthDeathModel model(bd);
    ds.truth = gillespie(model.kernel(), model.initial_distribution(),
                         mc.horizon, rng);
    ds.has_truth = true;
    ds.horizon_abs = mc.horizon;
    ds.true_params = {mc.death};
    ds.observations.kind = data_kind(config);
    ds.observations.sigma_obs = config.data.sigma;
    for (double t : spaced_times(config.data.count, mc.horizon)) {
      ds.observations.times.push_back(t);
      const State& x = state_at(ds.truth, t);
      double v = static_cast<double>(x[0]);
      if (ds.observations.kind == ObservationSet::Kind::NoisyState)
        v = rng.normal(v, config.data.sigma);
      ds.observations.values.push_back({v});
    }
    return ds;
  }

  if (mc.kind == "sir") {
    SIRConfig sir;
    sir.population = mc.capacity;
    sir.beta = mc.infection;
    sir.gamma = mc.removal;
    const Coord n = static_cast<Coord>(mc.capacity);
    StateSpace space(State{0, 0}, State{n, n});
    std::vector<Reaction> rx;
    rx.push_back({"infection", State{-1, 1}, mc.infection,
                  StructuralFactor::product(0, 1).with_sum_cap(n), false, {}});
    rx.push_back({"removal", State{0, -1}, mc.removal,
                  StructuralFactor::coord(1).with_sum_cap(n), false, {}});
    RateKernel kernel(space, std::move(rx), Seasonality::none());
    const InitialDistribution init =
        InitialDistribution::point(State{n - 1, 1});

    // Resample epidemics until the final removed count is representative.
    const double target = mc.removed_fraction;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      Trajectory traj = gillespie(kernel, init, mc.horizon, rng);
      std::vector<double> removals;
      for (std::size_t i = 1; i < traj.times.size(); ++i)
        if (traj.states[i][1] == traj.states[i - 1][1] - 1 &&
            traj.states[i][0] == traj.states[i - 1][0])
          removals.push_back(traj.times[i]);
      if (removals.size() < 2) continue;
      const double fraction =
          static_cast<double>(removals.size()) / static_cast<double>(n);
      if (target > 0.0 && std::fabs(fraction - target) > 0.1) continue;
      ds.truth = std::move(traj);
      ds.has_truth = true;
      ds.removal_times = std::move(removals);
      // The whole simulation window is observed: the removal-free tail
      // after the last removal is what identifies the epidemic as over.
      ds.horizon_abs = mc.horizon;
      ds.true_params = {mc.infection, mc.removal};
      ds.observations.kind = ObservationSet::Kind::JumpTimes;
      ds.observations.times = ds.removal_times;
      return ds;
    }
    throw Error("sir dataset: no epidemic hit the target removed fraction");
  }

  if (mc.kind == "lotka_volterra") {
    LotkaVolterraConfig lv;
    lv.bound = mc.capacity;
    lv.prey_birth = mc.prey_birth;
    lv.predation = mc.predation;
    lv.predator_birth = mc.predator_birth;
    lv.predator_death = mc.predator_death;
    lv.seasonal = mc.seasonal;
    lv.horizon = mc.horizon;
    lv.initial =
        State{static_cast<Coord>(1 + rng.uniform_int(
                  static_cast<std::uint64_t>(mc.capacity))),
              static_cast<Coord>(1 + rng.uniform_int(
                  static_cast<std::uint64_t>(mc.capacity)))};
    LotkaVolterraModel model(lv);
    ds.truth = gillespie(model.kernel(), model.initial_distribution(),
                         mc.horizon, rng);
    ds.has_truth = true;
    ds.horizon_abs = mc.horizon;
    ds.lv_initial = lv.initial;
    ds.true_params = {mc.prey_birth, mc.predation, mc.predator_birth,
                      mc.predator_death};
    ds.observations.kind = data_kind(config);
    ds.observations.sigma_obs = config.data.sigma;
    for (double t : spaced_times(config.data.count, mc.horizon)) {
      ds.observations.times.push_back(t);
      const State& x = state_at(ds.truth, t);
      std::vector<double> v = {static_cast<double>(x[0]),
                               static_cast<double>(x[1])};
      if (ds.observations.kind == ObservationSet::Kind::NoisyState)
        for (double& c : v) c = rng.normal(c, config.data.sigma);
      ds.observations.values.push_back(std::move(v));
    }
    return ds;
  }

  throw ConfigError("unknown model kind '" + mc.kind + "'");
}

Dataset load_dataset(const RunConfig& config) {
  Dataset ds;
  ds.horizon_abs = config.model.horizon;
  ds.observations = read_observations_csv(config.data.path);
  if (config.model.kind == "sir") {
    if (ds.observations.kind != ObservationSet::Kind::JumpTimes)
      throw ConfigError("sir expects jump observations");
    ds.removal_times = ds.observations.times;
  }
  if (config.model.kind == "lotka_volterra")
    throw ConfigError(
        "lotka_volterra datasets carry a per-dataset initial state; load is "
        "not supported, simulate instead");
  return ds;
}

namespace {

// Model construction for inference (parameters start at the config values).
struct BoundModel {
  std::unique_ptr<GibbsModel> model;
  SIRModel* sir = nullptr;  // non-null when the model is an epidemic
};

BoundModel make_model(const RunConfig& config, const Dataset& dataset) {
  const auto& mc = config.model;
  BoundModel out;
  if (mc.kind == "birth_death") {
    BirthDeathConfig bd;
    bd.capacity = mc.capacity;
    bd.birth_rate = mc.birth;
    bd.death_rate = mc.death;
    bd.seasonal = mc.seasonal;
    bd.horizon = mc.horizon;
    bd.infer_birth = mc.infer_birth;
    bd.death_prior = {mc.prior_shape, mc.prior_rate};
    bd.birth_prior = {mc.prior_shape, mc.prior_rate};
    auto model = std::make_unique<BirthDeathModel>(bd);
    model->set_observations(dataset.observations);
    out.model = std::move(model);
    return out;
  }
  if (mc.kind == "sir") {
    SIRConfig sir;
    sir.population = mc.capacity;
    sir.beta = mc.infection;
    sir.gamma = mc.removal;
    sir.beta_prior = {mc.prior_shape, mc.prior_rate};
    sir.gamma_prior = {mc.prior_shape, mc.prior_rate};
    auto model = std::make_unique<SIRModel>(sir, dataset.removal_times,
                                            dataset.horizon_abs);
    out.sir = model.get();
    out.model = std::move(model);
    return out;
  }
  LotkaVolterraConfig lv;
  lv.bound = mc.capacity;
  lv.prey_birth = mc.prey_birth;
  lv.predation = mc.predation;
  lv.predator_birth = mc.predator_birth;
  lv.predator_death = mc.predator_death;
  lv.seasonal = mc.seasonal;
  lv.horizon = mc.horizon;
  lv.initial = dataset.lv_initial;
  for (auto& p : lv.priors) p = {mc.prior_shape, mc.prior_rate};
  auto model = std::make_unique<LotkaVolterraModel>(lv);
  model->set_observations(dataset.observations);
  out.model = std::move(model);
  return out;
}

// Calibrated deterministic reference for envelope runs.
MeanPath calibrate_reference(const RunConfig& config, const Dataset& dataset,
                             const BoundModel& bound) {
  const auto& mc = config.model;
  if (mc.kind == "birth_death") {
    auto* bd = dynamic_cast<BirthDeathModel*>(bound.model.get());
    CalibrationData data;
    data.coords = {0};
    data.times = dataset.observations.times;
    for (const auto& v : dataset.observations.values)
      data.values.push_back({v[0]});
    const std::pair<double, double> bounds[] = {{1e-4, 10.0}};
    const OdeSystem system = bd->mean_system();
    CalibrationResult fit =
        calibrate(system, data, bounds, mc.horizon, mc.horizon / 1e4);
    return integrate(system, fit.params, mc.horizon, mc.horizon / 1e4);
  }
  if (mc.kind == "sir") {
    // Fit (infection, removal) to the cumulative removal counts on the
    // chain clock anchored at the initial start-time estimate.
    const double t0 = bound.sir->start_time();
    const double horizon = dataset.horizon_abs - t0;
    CalibrationData data;
    data.coords = {2};
    for (std::size_t j = 0; j < dataset.removal_times.size(); ++j) {
      data.times.push_back(dataset.removal_times[j] - t0);
      data.values.push_back({static_cast<double>(j + 1)});
    }
    const double n = static_cast<double>(mc.capacity);
    const std::pair<double, double> bounds[] = {{1e-5, 20.0 / n},
                                                {0.05, 10.0}};
    const OdeSystem system = bound.sir->mean_system();
    CalibrationResult fit =
        calibrate(system, data, bounds, horizon, horizon / 2e3);
    MeanPath full = integrate(system, fit.params, horizon, horizon / 2e3);
    // Keep (S, I) on the absolute clock for the envelope.
    std::vector<double> grid = full.grid();
    for (double& t : grid) t += t0;
    return MeanPath(std::move(grid),
                    {full.column(0), full.column(1)});
  }
  // lotka_volterra: refine the four rates around the configured values.
  auto* lv = dynamic_cast<LotkaVolterraModel*>(bound.model.get());
  CalibrationData data;
  data.coords = {0, 1};
  data.times = dataset.observations.times;
  for (const auto& v : dataset.observations.values)
    data.values.push_back({v[0], v[1]});
  const std::vector<double> p0 = lv->params();
  std::vector<std::pair<double, double>> bounds;
  for (double p : p0) bounds.push_back({p / 5.0, p * 5.0});
  const OdeSystem system = lv->mean_system();
  CalibrationResult fit =
      calibrate(system, data, bounds, mc.horizon, mc.horizon / 2e3);
  return integrate(system, fit.params, mc.horizon, mc.horizon / 2e3);
}

InferenceOutput run_mh_baseline(const RunConfig& config,
                                const Dataset& dataset, RandomSource& rng) {
  if (config.model.kind != "sir")
    throw ConfigError("mh_baseline applies to the sir model only");
  SIRConfig sir;
  sir.population = config.model.capacity;
  sir.beta = config.model.infection;
  sir.gamma = config.model.removal;
  sir.beta_prior = {config.model.prior_shape, config.model.prior_rate};
  sir.gamma_prior = {config.model.prior_shape, config.model.prior_rate};
  SIRMetropolisBaseline mh(sir, dataset.removal_times, dataset.horizon_abs);
  mh.init(rng);

  InferenceOutput out;
  out.trace.param_names = {"beta", "gamma", "t0"};
  const auto start = Clock::now();
  double last = 0.0;
  for (int s = 0; s < config.run.sweeps; ++s) {
    mh.sweep(rng);
    const double now = elapsed_seconds(start);
    out.trace.params.push_back(
        {mh.beta(), mh.gamma(), mh.infection_times().front()});
    out.trace.log_density.push_back(mh.log_likelihood(mh.infection_times()));
    out.trace.n_jumps.push_back(static_cast<std::int64_t>(
        mh.infection_times().size() - 1 + dataset.removal_times.size()));
    out.trace.seconds.push_back(now - last);
    last = now;
  }
  return out;
}

}  // namespace

std::vector<double> InferenceOutput::thinned(const RunConfig& config,
                                             std::size_t col) const {
  std::vector<double> out;
  for (std::size_t i = static_cast<std::size_t>(config.run.burnin);
       i < trace.size(); i += static_cast<std::size_t>(config.run.thin))
    out.push_back(trace.params[i][col]);
  return out;
}

InferenceOutput run_inference(const RunConfig& config, const Dataset& dataset,
                              RandomSource& rng, const SweepHook& on_sweep) {
  if (config.sampler.variant == "mh_baseline")
    return run_mh_baseline(config, dataset, rng);

  BoundModel bound = make_model(config, dataset);
  GibbsModel& model = *bound.model;
  const SamplerConfig sampler = config.sampler_config();

  InferenceOutput out;
  const bool needs_reference = sampler.normal_envelope.has_value() ||
                               sampler.gamma_envelope.has_value();
  if (needs_reference) {
    out.reference = calibrate_reference(config, dataset, bound);
    out.has_reference = true;
  }

  ChainState chain;
  model.init_chain(chain, rng);

  out.trace.param_names = model.param_names();
  const std::size_t n_params = out.trace.param_names.size();

  // Path samples for the credible band, on a fixed grid of the data clock.
  const int n_grid = 101;
  std::vector<double> grid;
  for (int g = 0; g < n_grid; ++g)
    grid.push_back(dataset.horizon_abs * g / (n_grid - 1));
  std::vector<std::vector<std::vector<double>>> path_samples;

  SweepContext ctx;
  if (out.has_reference) ctx.mean_path = &out.reference;

  const auto start = Clock::now();
  double last = 0.0;
  for (int s = 0; s < config.run.sweeps; ++s) {
    if (bound.sir != nullptr)
      ctx.mean_path_offset = bound.sir->start_time();
    gibbs_sweep(chain, model, sampler, ctx, rng);
    const double now = elapsed_seconds(start);

    std::vector<double> params = model.params();
    params.resize(n_params);
    out.trace.params.push_back(std::move(params));
    double log_density =
        trajectory_log_density(chain.traj, model.kernel(),
                               model.initial_distribution());
    if (model.observations() != nullptr)
      log_density += observation_log_likelihood(
          *model.observations(), chain.traj, chain.jump_tags, model.kernel());
    out.trace.log_density.push_back(log_density);
    out.trace.n_jumps.push_back(
        static_cast<std::int64_t>(chain.traj.n_jumps()));
    out.trace.seconds.push_back(now - last);
    last = now;

    if (on_sweep) on_sweep(chain, model);

    if (s >= config.run.burnin &&
        (s - config.run.burnin) % config.run.thin == 0) {
      const double t0 = bound.sir ? bound.sir->start_time() : 0.0;
      const int d = chain.traj.states.front().dim();
      std::vector<std::vector<double>> sample(
          static_cast<std::size_t>(d), std::vector<double>(grid.size()));
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const double internal =
            std::clamp(grid[g] - t0, 0.0, chain.traj.horizon);
        const State& x = state_at(chain.traj, internal);
        for (int c = 0; c < d; ++c)
          sample[static_cast<std::size_t>(c)][g] = x[c];
      }
      path_samples.push_back(std::move(sample));
    }
  }

  if (path_samples.size() >= 2)
    out.band = path_credible_band(path_samples, grid, 0.95);
  return out;
}

CompareResult run_compare(const std::vector<RunConfig>& configs,
                          int replicates, std::uint64_t dataset_seed,
                          int threads) {
  if (configs.size() < 2)
    throw ConfigError("compare needs a benchmark and at least one candidate");
  CompareResult result;
  std::mutex mu;
  std::vector<int> work;
  for (int r = 0; r < replicates; ++r) work.push_back(r);
  std::size_t next = 0;

  auto worker = [&]() {
    for (;;) {
      int replicate;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= work.size()) return;
        replicate = work[next++];
      }
      RandomSource data_rng =
          RandomSource(dataset_seed).split(static_cast<std::uint64_t>(replicate));
      Dataset dataset = simulate_dataset(configs[0], data_rng);
      std::vector<CompareCell> cells;
      for (std::size_t c = 0; c < configs.size(); ++c) {
        const RunConfig& cfg = configs[c];
        CompareCell cell;
        cell.config_name =
            cfg.name.empty() ? "config_" + std::to_string(c) : cfg.name;
        cell.replicate = replicate;
        RandomSource rng = RandomSource(cfg.run.seed)
                               .split(1000003 * (c + 1) +
                                      static_cast<std::uint64_t>(replicate));
        try {
          InferenceOutput inf = run_inference(cfg, dataset, rng);
          cell.seconds = inf.trace.total_seconds();
          const std::size_t n_params = inf.trace.param_names.size();
          for (std::size_t j = 0; j < n_params; ++j) {
            std::vector<double> column;
            for (std::size_t i = static_cast<std::size_t>(cfg.run.burnin);
                 i < inf.trace.size(); ++i)
              column.push_back(inf.trace.params[i][j]);
            const EssResult ess = effective_sample_size(column);
            cell.ess.push_back(ess.ess);
            cell.ess_per_sec.push_back(
                cell.seconds > 0.0 ? ess.ess / cell.seconds : 0.0);
          }
        } catch (const MemoryBudgetExceeded& err) {
          cell.failed = true;
          cell.failure = err.what();
        } catch (const std::exception& err) {
          // A failing configuration is a result, not a crash of the whole
          // comparison.
          cell.failed = true;
          cell.failure = err.what();
        }
        cells.push_back(std::move(cell));
      }
      std::lock_guard<std::mutex> lock(mu);
      for (auto& cell : cells) result.cells.push_back(std::move(cell));
    }
  };

  std::vector<std::thread> pool;
  const int n_threads = std::max(1, threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  // Ratio summaries vs the benchmark (configs[0]).
  const std::string bench_name =
      configs[0].name.empty() ? "config_0" : configs[0].name;
  std::vector<std::string> params;
  for (const auto& cell : result.cells)
    if (!cell.failed && cell.config_name == bench_name &&
        params.size() < cell.ess.size())
      params.resize(cell.ess.size());
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const std::string name =
        configs[c].name.empty() ? "config_" + std::to_string(c) : configs[c].name;
    for (std::size_t j = 0; j < params.size(); ++j) {
      std::vector<double> ratios;
      int failures = 0;
      for (int r = 0; r < replicates; ++r) {
        const CompareCell* bench = nullptr;
        const CompareCell* cand = nullptr;
        for (const auto& cell : result.cells) {
          if (cell.replicate != r) continue;
          if (cell.config_name == bench_name) bench = &cell;
          if (cell.config_name == name) cand = &cell;
        }
        if (cand == nullptr || cand->failed) {
          ++failures;
          continue;
        }
        if (bench == nullptr || bench->failed || j >= bench->ess.size() ||
            bench->ess_per_sec[j] <= 0.0)
          continue;
        ratios.push_back(cand->ess_per_sec[j] / bench->ess_per_sec[j]);
      }
      CompareSummary summary;
      summary.config_name = name;
      summary.param = "param_" + std::to_string(j);
      summary.failures = failures;
      if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        auto quantile = [&](double q) {
          const double pos = q * static_cast<double>(ratios.size() - 1);
          const std::size_t lo = static_cast<std::size_t>(pos);
          const std::size_t hi = std::min(lo + 1, ratios.size() - 1);
          const double w = pos - static_cast<double>(lo);
          return ratios[lo] * (1.0 - w) + ratios[hi] * w;
        };
        summary.ratio_median = quantile(0.5);
        summary.ratio_lo = quantile(0.025);
        summary.ratio_hi = quantile(0.975);
      }
      result.summary.push_back(summary);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Command wrappers

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir);
}

}  // namespace

int cmd_simulate(const RunConfig& config) {
  ensure_dir(config.run.out);
  RandomSource rng(config.run.seed);
  Dataset ds = simulate_dataset(config, rng);
  const std::string traj_path = config.run.out + "/truth.csv";
  const std::string obs_path = config.run.out + "/observations.csv";
  write_trajectory_csv(ds.truth, traj_path);
  write_observations_csv(ds.observations, obs_path);
  std::ofstream manifest(config.run.out + "/manifest.json");
  manifest << make_manifest(config, 0.0);
  std::cout << "seed: " << config.run.seed << "\n"
            << "trajectory: " << traj_path << "\n"
            << "observations: " << obs_path << "\n";
  if (config.model.kind == "lotka_volterra")
    std::cout << "initial: " << ds.lv_initial.str() << "\n";
  return 0;
}

int cmd_infer(const RunConfig& config) {
  ensure_dir(config.run.out);
  RandomSource rng(config.run.seed);
  Dataset ds;
  if (!config.data.path.empty()) {
    ds = load_dataset(config);
  } else {
    RandomSource data_rng = rng.split(0xDA7A);
    ds = simulate_dataset(config, data_rng);
    write_trajectory_csv(ds.truth, config.run.out + "/truth.csv");
    write_observations_csv(ds.observations,
                           config.run.out + "/observations.csv");
  }
  const auto start = std::chrono::steady_clock::now();
  RandomSource chain_rng = rng.split(0xC0A1);
  InferenceOutput out = run_inference(config, ds, chain_rng);
  const double elapsed = elapsed_seconds(start);
  write_trace_csv(out.trace, config.run.out + "/trace.csv");
  if (!out.band.grid.empty())
    write_band_csv(out.band, config.run.out + "/band.csv");
  if (out.has_reference)
    write_mean_path_csv(out.reference, config.run.out + "/mean_path.csv");
  std::ofstream manifest(config.run.out + "/manifest.json");
  manifest << make_manifest(config, elapsed);
  std::cout << "seed: " << config.run.seed << "\n"
            << "sweeps: " << config.run.sweeps << "\n"
            << "trace: " << config.run.out + "/trace.csv" << "\n";
  return 0;
}

int cmd_compare(const std::vector<RunConfig>& configs, int replicates,
                std::uint64_t dataset_seed, int threads,
                const std::string& out_dir) {
  ensure_dir(out_dir);
  CompareResult result = run_compare(configs, replicates, dataset_seed, threads);
  std::ofstream cells(out_dir + "/compare_cells.csv");
  cells << "config,replicate,param,ess,ess_per_sec,seconds,failed\n";
  for (const auto& cell : result.cells) {
    if (cell.failed) {
      cells << cell.config_name << ',' << cell.replicate << ",,,,"
            << format_double(cell.seconds) << ",1\n";
      continue;
    }
    for (std::size_t j = 0; j < cell.ess.size(); ++j)
      cells << cell.config_name << ',' << cell.replicate << ",param_" << j
            << ',' << format_double(cell.ess[j]) << ','
            << format_double(cell.ess_per_sec[j]) << ','
            << format_double(cell.seconds) << ",0\n";
  }
  std::ofstream summary(out_dir + "/compare_summary.csv");
  summary << "config,param,ratio_median,ratio_lo,ratio_hi,failures\n";
  for (const auto& row : result.summary)
    summary << row.config_name << ',' << row.param << ','
            << format_double(row.ratio_median) << ','
            << format_double(row.ratio_lo) << ','
            << format_double(row.ratio_hi) << ',' << row.failures << "\n";
  std::cout << "wrote " << out_dir << "/compare_summary.csv\n";
  for (const auto& row : result.summary)
    std::cout << row.config_name << " " << row.param << " ratio "
              << row.ratio_median << " [" << row.ratio_lo << ", "
              << row.ratio_hi << "]"
              << (row.failures ? " failures " + std::to_string(row.failures)
                               : "")
              << "\n";
  return 0;
}

int cmd_diagnose(const std::string& trace_path, int burnin, int max_lag) {
  Trace trace = read_trace_csv(trace_path);
  if (static_cast<int>(trace.size()) <= burnin)
    throw ConfigError("diagnose: trace shorter than burnin");
  std::cout << "sweeps: " << trace.size() << "\n";
  std::cout << "seconds: " << trace.total_seconds() << "\n";
  for (std::size_t j = 0; j < trace.param_names.size(); ++j) {
    std::vector<double> column;
    for (std::size_t i = static_cast<std::size_t>(burnin); i < trace.size();
         ++i)
      column.push_back(trace.params[i][j]);
    const EssResult ess = effective_sample_size(column);
    double mean = 0.0;
    for (double v : column) mean += v;
    mean /= static_cast<double>(column.size());
    std::cout << trace.param_names[j] << ".mean: " << mean << "\n";
    std::cout << trace.param_names[j] << ".ess: " << ess.ess
              << (ess.degenerate ? " (degenerate)" : "") << "\n";
    if (!ess.degenerate && static_cast<int>(column.size()) > 2 * max_lag) {
      const auto acf = autocorrelation(column, max_lag);
      std::cout << trace.param_names[j] << ".acf:";
      for (int k = 0; k <= max_lag; ++k)
        std::cout << ' ' << acf[static_cast<std::size_t>(k)];
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<CheckResult> results;
  const bool all = suite == "all";
  if (all || suite == "prop1") results.push_back(verify_prop1(seed, 100000));
  if (all || suite == "lemma1") results.push_back(verify_lemma1(seed, 100000));
  if (all || suite == "ffbs") results.push_back(verify_ffbs(seed, 60, 100000));
  if (all || suite == "invariance")
    results.push_back(verify_invariance(seed, 20000));
  if (all || suite == "geweke") results.push_back(verify_geweke(seed, 10000));
  if (results.empty()) {
    std::cerr << "unknown verification suite '" << suite << "'\n"
              << "known: prop1 lemma1 ffbs invariance geweke all\n";
    return 1;
  }
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " ("
              << r.seconds << " s) " << r.detail << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 4;
}

}  // namespace mjp
