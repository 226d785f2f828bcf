#ifndef MJP_RUNNER_HPP
#define MJP_RUNNER_HPP

#include <functional>

#include "mjp/diagnostics.hpp"
#include "mjp/run_config.hpp"
#include "mjp/trace.hpp"

namespace mjp {

// A simulated (or loaded) dataset on the data clock.
struct Dataset {
  Trajectory truth;  // ground-truth path (empty when loaded from CSV)
  bool has_truth = false;
  ObservationSet observations;         // state-observation models
  std::vector<double> removal_times;   // sir
  double horizon_abs = 0.0;
  State lv_initial{1, 1};
  std::vector<double> true_params;     // parameters used to simulate
};

Dataset simulate_dataset(const RunConfig& config, RandomSource& rng);
Dataset load_dataset(const RunConfig& config);

struct InferenceOutput {
  Trace trace;
  PathBand band;
  MeanPath reference;  // calibrated mean dynamics (empty if unused)
  bool has_reference = false;

  // Post-burnin thinned draws of one parameter column.
  std::vector<double> thinned(const RunConfig& config, std::size_t col) const;
};

// Full inference run driven by the config; on_sweep (optional) observes
// every chain state right after its sweep.
using SweepHook = std::function<void(const ChainState&, const GibbsModel&)>;
InferenceOutput run_inference(const RunConfig& config, const Dataset& dataset,
                              RandomSource& rng,
                              const SweepHook& on_sweep = {});

// Efficiency comparison across sampler configurations on shared datasets.
struct CompareCell {
  std::string config_name;
  int replicate = 0;
  std::vector<double> ess;        // per parameter
  std::vector<double> ess_per_sec;
  double seconds = 0.0;
  bool failed = false;            // e.g. filter memory budget exceeded
  std::string failure;
};

struct CompareSummary {
  std::string config_name;
  std::string param;
  double ratio_median = 0.0;  // ess/sec ratio vs benchmark across replicates
  double ratio_lo = 0.0;      // 2.5 percentile
  double ratio_hi = 0.0;      // 97.5 percentile
  int failures = 0;
};

struct CompareResult {
  std::vector<CompareCell> cells;
  std::vector<CompareSummary> summary;
};

CompareResult run_compare(const std::vector<RunConfig>& configs,
                          int replicates, std::uint64_t dataset_seed,
                          int threads);

// Command-level entry points used by the CLI; return process exit codes
// (0 ok, 2 config, 3 runtime, 4 verification failure).
int cmd_simulate(const RunConfig& config);
int cmd_infer(const RunConfig& config);
int cmd_compare(const std::vector<RunConfig>& configs, int replicates,
                std::uint64_t dataset_seed, int threads,
                const std::string& out_dir);
int cmd_diagnose(const std::string& trace_path, int burnin, int max_lag);
int cmd_verify(const std::string& suite, std::uint64_t seed);

}  // namespace mjp

#endif
