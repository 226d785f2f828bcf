#include "mjp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mjp/errors.hpp"
#include "mjp/simulate.hpp"

namespace mjp {

std::vector<double> autocorrelation(std::span<const double> series,
                                    int max_lag) {
  const std::size_t n = series.size();
  if (n < 2 * static_cast<std::size_t>(std::max(max_lag, 1)))
    throw DomainError("autocorrelation: series too short for max_lag");
  const double mean =
      std::accumulate(series.begin(), series.end(), 0.0) / double(n);
  double var = 0.0;
  for (double v : series) var += (v - mean) * (v - mean);
  std::vector<double> acf(static_cast<std::size_t>(max_lag) + 1, 0.0);
  acf[0] = 1.0;
  if (var <= 0.0) return acf;  // constant series: zero beyond lag 0
  for (int k = 1; k <= max_lag; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) < n; ++i)
      sum += (series[i] - mean) * (series[i + k] - mean);
    acf[static_cast<std::size_t>(k)] = sum / var;  // biased normalization
  }
  return acf;
}

EssResult effective_sample_size(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 100) throw DomainError("effective_sample_size: need >= 100 samples");
  const double mean =
      std::accumulate(series.begin(), series.end(), 0.0) / double(n);
  double var = 0.0;
  for (double v : series) var += (v - mean) * (v - mean);
  if (var <= 0.0) return {0.0, true};

  auto rho = [&](std::size_t k) {
    double sum = 0.0;
    for (std::size_t i = 0; i + k < n; ++i)
      sum += (series[i] - mean) * (series[i + k] - mean);
    return sum / var;
  };

  // Geyer initial monotone positive sequence over lag pairs.
  const std::size_t max_pairs = std::min<std::size_t>(n / 2 - 1, 5000);
  double tau = -1.0;
  double prev_pair = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < max_pairs; ++m) {
    double pair = rho(2 * m) + rho(2 * m + 1);
    if (pair <= 0.0) break;
    pair = std::min(pair, prev_pair);
    prev_pair = pair;
    tau += 2.0 * pair;
  }
  tau = std::max(tau, 1e-12);
  return {static_cast<double>(n) / tau, false};
}

PathBand path_credible_band(
    const std::vector<std::vector<std::vector<double>>>& samples,
    std::span<const double> grid, double level) {
  if (samples.empty()) throw DomainError("path_credible_band: no samples");
  const std::size_t n = samples.size();
  const std::size_t d = samples.front().size();
  const std::size_t g = grid.size();
  PathBand band;
  band.grid.assign(grid.begin(), grid.end());
  band.mean.assign(d, std::vector<double>(g, 0.0));
  band.lower.assign(d, std::vector<double>(g, 0.0));
  band.upper.assign(d, std::vector<double>(g, 0.0));
  const double tail = 0.5 * (1.0 - level);
  std::vector<double> column(n);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t t = 0; t < g; ++t) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        column[k] = samples[k][c][t];
        sum += column[k];
      }
      std::sort(column.begin(), column.end());
      auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, n - 1);
        const double w = pos - static_cast<double>(lo);
        return column[lo] * (1.0 - w) + column[hi] * w;
      };
      band.mean[c][t] = sum / static_cast<double>(n);
      band.lower[c][t] = quantile(tail);
      band.upper[c][t] = quantile(1.0 - tail);
    }
  }
  return band;
}

Lemma1Report lemma1_check(double a, double b, double c,
                          std::span<const double> kappas, int n_draws,
                          RandomSource& rng) {
  Lemma1Report report;
  report.means_within_4se = true;
  report.msq_strictly_decreasing = true;
  const double limit = std::exp(a * c);
  double prev_msq = std::numeric_limits<double>::infinity();
  for (double kappa : kappas) {
    if (!(1.0 + a / kappa > 0.0))
      throw DomainError("lemma1_check: 1 + a/kappa must be positive");
    const double log_base = std::log1p(a / kappa);
    const double rate = (kappa + b) * c;
    double sum = 0.0, sum_sq = 0.0, sum_dev = 0.0;
    for (int i = 0; i < n_draws; ++i) {
      const double u =
          std::exp(static_cast<double>(rng.poisson(rate)) * log_base);
      sum += u;
      sum_sq += u * u;
      sum_dev += (u - limit) * (u - limit);
    }
    const double mean = sum / n_draws;
    const double var = std::max(sum_sq / n_draws - mean * mean, 0.0);
    Lemma1Report::PerKappa row;
    row.kappa = kappa;
    row.sample_mean = mean;
    row.closed_form_mean = std::exp(a * c + a * b * c / kappa);
    row.mean_se = std::sqrt(var / n_draws);
    row.sample_msq = sum_dev / n_draws;
    if (std::fabs(mean - row.closed_form_mean) > 4.0 * row.mean_se &&
        row.mean_se > 0.0)
      report.means_within_4se = false;
    if (!(row.sample_msq < prev_msq)) report.msq_strictly_decreasing = false;
    prev_msq = row.sample_msq;
    report.rows.push_back(row);
  }
  return report;
}

double lemma1_mean_by_summation(double a, double b, double c, double kappa) {
  const double rate = (kappa + b) * c;
  const double base = 1.0 + a / kappa;
  double log_pmf = -rate;
  double cumulative = 0.0;
  double total = 0.0;
  double log_pow = 0.0;
  for (std::size_t v = 0; v < 10000000; ++v) {
    const double pmf = std::exp(log_pmf);
    total += pmf * std::exp(log_pow);
    cumulative += pmf;
    if (cumulative >= 1.0 - 1e-12 && static_cast<double>(v) > rate) break;
    log_pmf += std::log(rate) - std::log(static_cast<double>(v) + 1.0);
    log_pow += std::log(base);
  }
  return total;
}

GewekeReport geweke_test(const BirthDeathConfig& model_config,
                         const SamplerConfig& sampler_config,
                         const GewekeSettings& settings, RandomSource& rng) {
  GewekeReport report;
  if (settings.n_forward < 10 || settings.n_gibbs < 10) {
    report.inconclusive = true;
    return report;
  }

  std::vector<double> obs_times;
  for (int r = 0; r < settings.n_observations; ++r)
    obs_times.push_back(model_config.horizon * (r + 1) /
                        (settings.n_observations + 1));

  auto draw_observations = [&](const Trajectory& traj, RandomSource& r) {
    ObservationSet obs;
    obs.kind = ObservationSet::Kind::NoisyState;
    obs.sigma_obs = settings.obs_sigma;
    obs.times = obs_times;
    for (double t : obs_times) {
      const State& x = state_at(traj, t);
      obs.values.push_back(
          {r.normal(static_cast<double>(x[0]), settings.obs_sigma)});
    }
    return obs;
  };

  // Forward: parameter from the prior, path from the kernel, data from the path.
  RandomSource fwd_rng = rng.split(1);
  std::vector<double> fwd_param, fwd_jumps;
  for (int i = 0; i < settings.n_forward; ++i) {
    BirthDeathConfig cfg = model_config;
    cfg.death_rate = fwd_rng.gamma(model_config.death_prior.shape,
                                   model_config.death_prior.rate);
    BirthDeathModel model(cfg);
    ChainState chain;
    model.init_chain(chain, fwd_rng);
    fwd_param.push_back(cfg.death_rate);
    fwd_jumps.push_back(static_cast<double>(chain.traj.n_jumps()));
  }

  // Successive-conditional: one transition of the posterior sampler, then
  // fresh data from the new path.
  RandomSource gibbs_rng = rng.split(2);
  std::vector<double> sc_param, sc_jumps;
  {
    BirthDeathConfig cfg = model_config;
    cfg.death_rate = gibbs_rng.gamma(model_config.death_prior.shape,
                                     model_config.death_prior.rate);
    BirthDeathModel model(cfg);
    ChainState chain;
    model.init_chain(chain, gibbs_rng);
    SweepContext ctx;
    for (int i = 0; i < settings.n_gibbs; ++i) {
      model.set_observations(draw_observations(chain.traj, gibbs_rng));
      gibbs_sweep(chain, model, sampler_config, ctx, gibbs_rng);
      sc_param.push_back(model.death_rate());
      sc_jumps.push_back(static_cast<double>(chain.traj.n_jumps()));
    }
  }

  auto z_score = [](std::span<const double> a, std::span<const double> b) {
    auto moments = [](std::span<const double> v) {
      const double n = static_cast<double>(v.size());
      double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      var /= n;
      return std::pair<double, double>{mean, var};
    };
    const auto [ma, va] = moments(a);
    const auto [mb, vb] = moments(b);
    // The conditional side is autocorrelated; discount by its ESS.
    const double n_a = static_cast<double>(a.size());
    EssResult ess = effective_sample_size(b);
    const double n_b = ess.degenerate ? 1.0 : std::max(ess.ess, 2.0);
    return (ma - mb) / std::sqrt(va / n_a + vb / n_b);
  };
  report.z_param = z_score(fwd_param, sc_param);
  report.z_jumps = z_score(fwd_jumps, sc_jumps);
  return report;
}

}  // namespace mjp
