#ifndef MJP_DIAGNOSTICS_HPP
#define MJP_DIAGNOSTICS_HPP

#include <span>
#include <string>
#include <vector>

#include "mjp/models/birth_death.hpp"
#include "mjp/random.hpp"
#include "mjp/samplers.hpp"

namespace mjp {

// Biased-normalized sample autocorrelation up to max_lag. A constant series
// reports 1 at lag 0 and 0 elsewhere (flagged degenerate by the ESS below).
std::vector<double> autocorrelation(std::span<const double> series,
                                    int max_lag);

struct EssResult {
  double ess = 0.0;
  bool degenerate = false;  // constant input
};

// n / (1 + 2 sum rho(k)) with Geyer's initial monotone positive sequence
// truncation.
EssResult effective_sample_size(std::span<const double> series);

struct PathBand {
  std::vector<double> grid;
  std::vector<std::vector<double>> mean, lower, upper;  // [coord][grid]
};

// Pointwise mean and empirical central quantiles of path samples evaluated
// on a common grid. samples[k][c][g] = sample k, coordinate c, grid g.
PathBand path_credible_band(
    const std::vector<std::vector<std::vector<double>>>& samples,
    std::span<const double> grid, double level);

// Monte-Carlo audit of the mean-square convergence of dominated-count
// weight products: u = (1 + a/kappa)^v with v ~ Poisson((kappa + b) c).
struct Lemma1Report {
  struct PerKappa {
    double kappa;
    double sample_mean;
    double closed_form_mean;  // e^{ac + abc/kappa}
    double mean_se;
    double sample_msq;  // E[(u - e^{ac})^2]
  };
  std::vector<PerKappa> rows;
  bool means_within_4se = false;
  bool msq_strictly_decreasing = false;
  bool pass() const { return means_within_4se && msq_strictly_decreasing; }
};

Lemma1Report lemma1_check(double a, double b, double c,
                          std::span<const double> kappas, int n_draws,
                          RandomSource& rng);

// Closed-form mean via direct Poisson-mass summation, truncated at tail
// mass 1e-12 (used to validate the analytic formula in tests).
double lemma1_mean_by_summation(double a, double b, double c, double kappa);

// Joint-distribution audit: moments of (death rate, jump count) under
// forward simulation of (parameter, path, data) versus the
// successive-conditional sampler built from one Gibbs kernel.
struct GewekeReport {
  double z_param = 0.0;
  double z_jumps = 0.0;
  bool inconclusive = false;  // too few samples to compare
  double max_abs_z() const {
    return std::max(std::abs(z_param), std::abs(z_jumps));
  }
};

struct GewekeSettings {
  int n_forward = 10000;
  int n_gibbs = 10000;
  int n_observations = 5;
  double obs_sigma = 1.0;
};

GewekeReport geweke_test(const BirthDeathConfig& model_config,
                         const SamplerConfig& sampler_config,
                         const GewekeSettings& settings, RandomSource& rng);

}  // namespace mjp

#endif
