// Command-line front end: dataset simulation, inference runs, sampler
// comparisons, trace diagnostics and the verification suites.
//
// Exit codes: 0 ok, 1 usage, 2 config, 3 runtime, 4 verification failure.

#include <CLI11.hpp>
#include <iostream>

#include "mjp/errors.hpp"
#include "mjp/run_config.hpp"
#include "mjp/runner.hpp"

namespace {

mjp::RunConfig load_with_overrides(const std::string& path,
                                   const std::uint64_t* seed,
                                   const std::string& out, int threads) {
  mjp::RunConfig config = mjp::load_run_config(path);
  if (seed != nullptr) config.run.seed = *seed;
  if (!out.empty()) config.run.out = out;
  if (threads > 0) config.run.threads = threads;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniformization-based samplers for population jump processes"};
  app.require_subcommand(1);

  std::string config_path, out_dir, trace_path, suite = "all";
  std::vector<std::string> config_paths;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0, replicates = 10, burnin = 0, max_lag = 20;
  std::uint64_t dataset_seed = 7;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("--config", config_path, "run configuration (JSON)")
          ->required();
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { seed = v; seed_set = true; },
        "override the run seed");
    cmd->add_option("--out", out_dir, "override the output directory");
    cmd->add_option("--threads", threads, "worker threads");
  };

  CLI::App* sim = app.add_subcommand("simulate", "simulate a dataset");
  add_common(sim, true);

  CLI::App* infer = app.add_subcommand("infer", "run an inference chain");
  add_common(infer, true);

  CLI::App* compare =
      app.add_subcommand("compare", "efficiency comparison of samplers");
  compare->add_option("--config", config_paths,
                      "run configurations; first one is the benchmark")
      ->required()
      ->expected(-2);
  compare->add_option("--replicates", replicates, "datasets per comparison");
  compare->add_option("--dataset-seed", dataset_seed,
                      "seed stream for shared datasets");
  compare->add_option("--out", out_dir, "output directory")->required();
  compare->add_option("--threads", threads, "worker threads");

  CLI::App* diagnose =
      app.add_subcommand("diagnose", "summarize a trace CSV");
  diagnose->add_option("--trace", trace_path, "trace csv path")->required();
  diagnose->add_option("--burnin", burnin, "sweeps to discard");
  diagnose->add_option("--max-lag", max_lag, "autocorrelation lags printed");

  CLI::App* verify =
      app.add_subcommand("verify", "run the correctness suites");
  verify->add_option("suite", suite,
                     "prop1 | lemma1 | ffbs | invariance | geweke | all");
  verify->add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t v) { seed = v; seed_set = true; },
      "override the verification seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return mjp::cmd_simulate(load_with_overrides(
          config_path, seed_set ? &seed : nullptr, out_dir, threads));
    }
    if (infer->parsed()) {
      return mjp::cmd_infer(load_with_overrides(
          config_path, seed_set ? &seed : nullptr, out_dir, threads));
    }
    if (compare->parsed()) {
      std::vector<mjp::RunConfig> configs;
      for (const auto& path : config_paths)
        configs.push_back(mjp::load_run_config(path));
      return mjp::cmd_compare(configs, replicates, dataset_seed,
                              threads > 0 ? threads : 1, out_dir);
    }
    if (diagnose->parsed()) {
      return mjp::cmd_diagnose(trace_path, burnin, max_lag);
    }
    if (verify->parsed()) {
      return mjp::cmd_verify(suite, seed_set ? seed : 20240817ULL);
    }
  } catch (const mjp::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
  return 1;
}
