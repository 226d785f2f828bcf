#include <doctest.h>

#include <cmath>

#include "mjp/diagnostics.hpp"

using namespace mjp;

namespace {

std::vector<double> ar1_series(double phi, int n, RandomSource& rng) {
  std::vector<double> x(static_cast<std::size_t>(n));
  x[0] = rng.normal(0.0, 1.0 / std::sqrt(1.0 - phi * phi));
  for (int i = 1; i < n; ++i)
    x[static_cast<std::size_t>(i)] =
        phi * x[static_cast<std::size_t>(i - 1)] + rng.normal(0.0, 1.0);
  return x;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("acf of iid noise is near zero at lag one and exactly one at zero") {
  RandomSource rng(61);
  std::vector<double> x(100000);
  for (double& v : x) v = rng.normal(0.0, 1.0);
  auto acf = autocorrelation(x, 5);
  CHECK(acf[0] == 1.0);
  CHECK(std::fabs(acf[1]) < 3.0 / std::sqrt(100000.0));
}

TEST_CASE("acf of an ar(1) chain matches its coefficient") {
  RandomSource rng(67);
  auto x = ar1_series(0.9, 100000, rng);
  auto acf = autocorrelation(x, 3);
  CHECK(std::fabs(acf[1] - 0.9) < 0.02);
}

TEST_CASE("constant series reports unit lag-zero acf and zero elsewhere") {
  std::vector<double> x(500, 3.25);
  auto acf = autocorrelation(x, 4);
  CHECK(acf[0] == 1.0);
  for (int k = 1; k <= 4; ++k) CHECK(acf[static_cast<std::size_t>(k)] == 0.0);
}

TEST_CASE("ess of iid noise is near the sample count") {
  RandomSource rng(71);
  std::vector<double> x(20000);
  for (double& v : x) v = rng.normal(0.0, 1.0);
  EssResult res = effective_sample_size(x);
  CHECK(!res.degenerate);
  CHECK(res.ess > 0.9 * 20000);
  CHECK(res.ess < 1.1 * 20000);
}

TEST_CASE("ess of a persistent ar(1) chain matches the theory") {
  RandomSource rng(73);
  auto x = ar1_series(0.9, 100000, rng);
  EssResult res = effective_sample_size(x);
  const double expected = 100000.0 * (1.0 - 0.9) / (1.0 + 0.9);
  CHECK(std::fabs(res.ess - expected) < 0.25 * expected);
}

TEST_CASE("ess is exactly invariant under affine maps") {
  RandomSource rng(79);
  auto x = ar1_series(0.6, 5000, rng);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = -4.0 * x[i] + 11.0;
  CHECK(effective_sample_size(x).ess ==
        doctest::Approx(effective_sample_size(y).ess).epsilon(1e-12));
}

TEST_CASE("constant series has zero effective size, flagged") {
  std::vector<double> x(500, 1.0);
  EssResult res = effective_sample_size(x);
  CHECK(res.degenerate);
  CHECK(res.ess == 0.0);
}

TEST_CASE("credible band of identical paths has zero width") {
  std::vector<std::vector<std::vector<double>>> samples(
      200, {{1.0, 2.0, 3.0}});
  const double grid[] = {0.0, 0.5, 1.0};
  PathBand band = path_credible_band(samples, grid, 0.95);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(band.lower[0][t] == band.upper[0][t]);
    CHECK(band.mean[0][t] == band.lower[0][t]);
  }
}

TEST_CASE("credible band of gaussian paths matches the normal quantiles") {
  RandomSource rng(83);
  const int n = 20000;
  std::vector<std::vector<std::vector<double>>> samples;
  samples.reserve(n);
  for (int k = 0; k < n; ++k)
    samples.push_back({{rng.normal(5.0, 2.0), rng.normal(-1.0, 0.5)}});
  const double grid[] = {0.0, 1.0};
  PathBand band = path_credible_band(samples, grid, 0.95);
  CHECK(band.mean[0][0] == doctest::Approx(5.0).epsilon(0.02));
  CHECK(band.upper[0][0] ==
        doctest::Approx(5.0 + 1.96 * 2.0).epsilon(0.05));
  CHECK(band.lower[0][1] ==
        doctest::Approx(-1.0 - 1.96 * 0.5).epsilon(0.05));
}

TEST_CASE("degenerate transformation with a = 0 is constant at one") {
  RandomSource rng(89);
  const double kappas[] = {10.0, 100.0};
  Lemma1Report report = lemma1_check(0.0, 1.0, 2.0, kappas, 2000, rng);
  for (const auto& row : report.rows) {
    CHECK(row.sample_mean == 1.0);
    CHECK(row.sample_msq == 0.0);
  }
}

TEST_CASE("sample means track the closed form across kappa") {
  RandomSource rng(97);
  const double kappas[] = {10.0, 100.0, 1000.0};
  Lemma1Report report = lemma1_check(-1.0, 1.0, 2.0, kappas, 100000, rng);
  CHECK(report.means_within_4se);
  CHECK(report.rows[1].closed_form_mean ==
        doctest::Approx(std::exp(-2.02)).epsilon(1e-12));
  CHECK(report.msq_strictly_decreasing);
}

TEST_CASE("closed-form mean matches direct poisson summation") {
  const double direct = lemma1_mean_by_summation(-1.0, 1.0, 2.0, 10.0);
  const double closed = std::exp(-2.0 + (-1.0) * 1.0 * 2.0 / 10.0);
  CHECK(std::fabs(direct - closed) < 1e-9);
}

TEST_CASE("zero-iteration audit is inconclusive") {
  RandomSource rng(101);
  BirthDeathConfig cfg;
  SamplerConfig sampler;
  GewekeSettings settings;
  settings.n_forward = 0;
  settings.n_gibbs = 0;
  GewekeReport report = geweke_test(cfg, sampler, settings, rng);
  CHECK(report.inconclusive);
}

TEST_CASE("joint-distribution audit passes on a small model") {
  RandomSource rng(103);
  BirthDeathConfig cfg;
  cfg.capacity = 6;
  cfg.birth_rate = 1.0;
  cfg.death_rate = 0.5;
  cfg.seasonal = false;
  cfg.horizon = 3.0;
  cfg.death_prior = {10.0, 20.0};  // proper prior keeps the audit sharp
  SamplerConfig sampler;
  sampler.variant = SamplerVariant::StationaryReduced;
  sampler.psi = PsiOperator::exit_factor(0.5);
  GewekeSettings settings;
  settings.n_forward = 4000;
  settings.n_gibbs = 4000;
  settings.n_observations = 3;
  settings.obs_sigma = 1.0;
  GewekeReport report = geweke_test(cfg, sampler, settings, rng);
  CHECK(!report.inconclusive);
  CHECK(report.max_abs_z() < 4.0);
}

}  // TEST_SUITE
