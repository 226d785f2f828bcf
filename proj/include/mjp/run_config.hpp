#ifndef MJP_RUN_CONFIG_HPP
#define MJP_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "mjp/envelopes.hpp"
#include "mjp/samplers.hpp"

namespace mjp {

// Declarative description of one batch run, parsed from strict JSON:
// unknown keys are rejected so config drift fails loudly.
struct RunConfig {
  std::string name;  // label used in comparison tables

  struct Model {
    std::string kind = "birth_death";  // birth_death | sir | lotka_volterra
    int capacity = 50;
    double horizon = 100.0;
    bool seasonal = true;
    bool infer_birth = false;
    // rate parameters by role; unused roles ignored per model
    double birth = 0.5, death = 0.05;              // birth_death
    double infection = 0.04, removal = 1.0;        // sir
    double prey_birth = 0.125, predation = 0.005;  // lotka_volterra
    double predator_birth = 0.005, predator_death = 0.1;
    double prior_shape = 1.0, prior_rate = 0.01;
    double removed_fraction = 0.8;  // sir dataset target, 0 disables
  } model;

  struct Data {
    std::string kind = "noisy_state";  // noisy_state | exact_state | removal_times
    int count = 50;
    double sigma = 1.0;
    std::string path;  // read observations from CSV instead of simulating
  } data;

  struct Sampler {
    std::string variant = "vanilla";  // naive | stationary | nonstationary |
                                      // vanilla | mh_baseline
    double omega_factor = 1.5;
    std::string psi = "vanilla";  // exit | half_exit | vanilla
    double psi_factor = 0.0;      // >0 overrides psi with factor * exit
    std::optional<NormalEnvelopeParams> normal_envelope;
    std::optional<GammaEnvelopeParams> gamma_envelope;
    std::optional<SplitScheme> split;
    double filter_max_mb = 1024.0;
  } sampler;

  struct Run {
    int sweeps = 1000;
    int burnin = 100;
    int thin = 1;
    std::uint64_t seed = 1;
    std::string out = "out";
    int threads = 1;
  } run;

  SamplerConfig sampler_config() const;
};

RunConfig parse_run_config_json(const std::string& text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json(const RunConfig& config);

// Manifest: a config echo plus provenance, written next to every run's
// outputs. load_run_config accepts either a bare config or a manifest.
std::string make_manifest(const RunConfig& config, double elapsed_seconds);

}  // namespace mjp

#endif
