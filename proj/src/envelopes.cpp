#include "mjp/envelopes.hpp"

#include <algorithm>
#include <cmath>

#include "mjp/errors.hpp"
#include "mjp/ffbs.hpp"
#include "mjp/mathutil.hpp"

namespace mjp {

namespace {

// Integer window {x : |x - center| < radius} on one coordinate, clipped to
// [lo, hi]; widened if needed so `keep` stays inside.
std::pair<Coord, Coord> strict_window(double center, double radius, Coord lo,
                                      Coord hi, Coord keep) {
  Coord a = static_cast<Coord>(std::floor(center - radius)) + 1;
  Coord b = static_cast<Coord>(std::ceil(center + radius)) - 1;
  a = std::max(a, lo);
  b = std::min(b, hi);
  a = std::min(a, keep);
  b = std::max(b, keep);
  return {a, b};
}

}  // namespace

NormalEnvelope draw_normal_envelope(const AugmentedTrajectory& aug,
                                    const MeanPath& xi,
                                    const NormalEnvelopeParams& params,
                                    RandomSource& rng) {
  if (!(params.kappa > 0.0 && params.kappa <= 1.0))
    throw DomainError("normal envelope: kappa must be in (0,1]");
  if (!(params.sigma > 0.0) || !(params.mu > 0.0))
    throw DomainError("normal envelope: mu and sigma must be positive");
  const std::size_t m = aug.times.size();
  const int d = aug.states.front().dim();
  NormalEnvelope env;
  env.sigma = params.sigma;
  env.radius.assign(m, std::vector<double>(d, 0.0));
  env.mean.assign(m, std::vector<double>(d, params.mu));
  for (std::size_t i = 1; i < m; ++i) {
    for (int c = 0; c < d; ++c) {
      const double mean_i =
          (i == 1) ? params.mu
                   : std::max(params.mu, env.radius[i - 1][c] - params.kappa);
      const double dist =
          std::fabs(aug.states[i][c] - xi.value(c, aug.times[i]));
      env.mean[i][c] = mean_i;
      env.radius[i][c] =
          rng.truncated_normal_lower(mean_i, params.sigma, dist);
    }
  }
  return env;
}

SupportBox normal_window(const NormalEnvelope& env, const MeanPath& xi,
                         std::size_t epoch, double t, const StateSpace& space,
                         const State& generator) {
  const int d = generator.dim();
  State lo(d), hi(d);
  for (int c = 0; c < d; ++c) {
    const Coord upper = space.upper()[c] == StateSpace::kUnbounded
                            ? std::numeric_limits<Coord>::max() / 2
                            : space.upper()[c];
    auto [a, b] = strict_window(xi.value(c, t), env.radius[epoch][c],
                                space.lower()[c], upper, generator[c]);
    lo[c] = a;
    hi[c] = b;
  }
  return SupportBox(lo, hi);
}

void normal_log_adjust(const NormalEnvelope& env, const MeanPath& xi,
                       std::size_t epoch, double t, const SupportBox& box,
                       std::vector<double>& out) {
  const int d = box.dim();
  const std::size_t vol = box.volume();
  for (std::size_t idx = 0; idx < vol; ++idx) {
    const State x = box.state_at(idx);
    double adj = 0.0;
    for (int c = 0; c < d; ++c) {
      const double dist = std::fabs(x[c] - xi.value(c, t));
      if (dist >= env.radius[epoch][c]) {
        adj = kLogZero;
        break;
      }
      adj -= log_normal_cdf((env.mean[epoch][c] - dist) / env.sigma);
    }
    out.push_back(adj);
  }
}

GammaEnvelope draw_gamma_envelope(const AugmentedTrajectory& aug,
                                  const MeanPath& xi,
                                  const GammaEnvelopeParams& params,
                                  const State& jump_magnitudes,
                                  RandomSource& rng) {
  if (params.alpha < 1) throw DomainError("gamma envelope: alpha must be >= 1");
  if (!(params.kappa > 0.0 && params.kappa < 1.0))
    throw DomainError("gamma envelope: kappa must be in (0,1)");
  if (params.lag < 1) throw DomainError("gamma envelope: lag must be >= 1");
  for (int c = 0; c < jump_magnitudes.dim(); ++c)
    if (jump_magnitudes[c] > 1)
      throw UnsupportedError(
          "gamma envelope requires unit jump magnitudes per coordinate");

  const std::size_t m = aug.times.size();
  const int d = aug.states.front().dim();
  GammaEnvelope env;
  env.alpha = params.alpha;

  const std::size_t lag = static_cast<std::size_t>(params.lag);
  const std::size_t offset = 1 + rng.uniform_int(lag);
  for (std::size_t i = offset; i < m; i += lag) env.evidence_epochs.push_back(i);

  const double decay = 1.0 - params.kappa;
  const double decay_l = std::pow(decay, static_cast<double>(params.lag));
  const double stat_var =
      params.sigma * params.sigma / (1.0 - decay * decay);
  const double cond_var = stat_var * (1.0 - decay_l * decay_l);

  std::vector<double> log_mean(d, params.mu);
  for (std::size_t j = 0; j < env.evidence_epochs.size(); ++j) {
    const std::size_t i = env.evidence_epochs[j];
    std::vector<double> radius(d), beta(d);
    for (int c = 0; c < d; ++c) {
      if (j == 0)
        log_mean[c] = rng.normal(params.mu, std::sqrt(stat_var));
      else
        log_mean[c] =
            rng.normal(params.mu + (log_mean[c] - params.mu) * decay_l,
                       std::sqrt(cond_var));
      const double rate = params.alpha * std::exp(-log_mean[c]);
      beta[c] = rate;
      const double dist =
          std::fabs(aug.states[i][c] - xi.value(c, aug.times[i]));
      radius[c] = dist + rng.gamma(params.alpha, rate);
    }
    env.radius.push_back(std::move(radius));
    env.beta.push_back(std::move(beta));
  }
  return env;
}

bool is_evidence_epoch(const GammaEnvelope& env, std::size_t epoch,
                       std::size_t* out_index) {
  const auto it = std::lower_bound(env.evidence_epochs.begin(),
                                   env.evidence_epochs.end(), epoch);
  if (it == env.evidence_epochs.end() || *it != epoch) return false;
  if (out_index)
    *out_index = static_cast<std::size_t>(it - env.evidence_epochs.begin());
  return true;
}

SupportBox gamma_window(const GammaEnvelope& env, const MeanPath& xi,
                        std::size_t evidence_index, double t,
                        const StateSpace& space, const State& generator) {
  const int d = generator.dim();
  State lo(d), hi(d);
  for (int c = 0; c < d; ++c) {
    const Coord upper = space.upper()[c] == StateSpace::kUnbounded
                            ? std::numeric_limits<Coord>::max() / 2
                            : space.upper()[c];
    auto [a, b] = strict_window(xi.value(c, t), env.radius[evidence_index][c],
                                space.lower()[c], upper, generator[c]);
    lo[c] = a;
    hi[c] = b;
  }
  return SupportBox(lo, hi);
}

void gamma_log_adjust(const GammaEnvelope& env, const MeanPath& xi,
                      std::size_t evidence_index, double t,
                      const SupportBox& box, std::vector<double>& out) {
  const int d = box.dim();
  const std::size_t vol = box.volume();
  for (std::size_t idx = 0; idx < vol; ++idx) {
    const State x = box.state_at(idx);
    double adj = 0.0;
    for (int c = 0; c < d; ++c) {
      const double slack =
          env.radius[evidence_index][c] - std::fabs(x[c] - xi.value(c, t));
      if (slack <= 0.0) {
        adj = kLogZero;
        break;
      }
      adj += (env.alpha - 1) * std::log(slack) -
             env.beta[evidence_index][c] * slack;
    }
    out.push_back(adj);
  }
}

PathConstraints apply_split(const AugmentedTrajectory& aug,
                            const SplitScheme& scheme, const StateSpace& space,
                            const State& jump_magnitudes, RandomSource& rng) {
  const std::size_t m = aug.times.size();
  const int d = aug.states.front().dim();

  if (scheme.kind == SplitScheme::Kind::Partition) {
    // Parts are per-coordinate intervals; they stay internally connected
    // only when each coordinate can move on its own.
    for (int c = 0; c < d; ++c)
      if (jump_magnitudes[c] > 1)
        throw UnsupportedError("partition parts require unit jumps");
  }

  PathConstraints out;
  out.supports.assign(m, SupportBox());
  out.log_adjust.assign(m, {});
  out.bridge_lock.assign(m, 0);

  // Default: unconstrained box over the (bounded) space.
  State lo(d), hi(d);
  for (int c = 0; c < d; ++c) {
    lo[c] = space.lower()[c];
    if (space.upper()[c] == StateSpace::kUnbounded)
      throw UnsupportedError("split schemes require a bounded space");
    hi[c] = space.upper()[c];
  }
  const SupportBox full(lo, hi);
  for (std::size_t i = 0; i < m; ++i) out.supports[i] = full;

  // Randomized lag and phase, re-instantiated every sweep.
  const int lag_lo = std::max(1, static_cast<int>(0.8 * scheme.lag));
  const int lag_hi = std::max(lag_lo, static_cast<int>(1.2 * scheme.lag));
  const std::size_t lag = static_cast<std::size_t>(
      lag_lo + static_cast<int>(rng.uniform_int(
                   static_cast<std::uint64_t>(lag_hi - lag_lo + 1))));
  const std::size_t offset = 1 + rng.uniform_int(lag);

  for (std::size_t i = offset; i < m; i += lag) {
    const State& x = aug.states[i];
    if (scheme.kind == SplitScheme::Kind::Bridge) {
      out.supports[i] = SupportBox::singleton(x);
      out.bridge_lock[i] = 1;
    } else {
      State plo(d), phi(d);
      for (int c = 0; c < d; ++c) {
        const int w = std::max(1, scheme.part_width);
        const Coord base = space.lower()[c];
        const Coord k = (x[c] - base) / w;
        plo[c] = base + k * w;
        phi[c] = std::min<Coord>(base + (k + 1) * w - 1, space.upper()[c]);
      }
      SupportBox part(plo, phi);
      if (!part.contains(x))
        throw InvariantViolation("partition part misses its own state");
      out.supports[i] = part;
    }
  }
  return out;
}

}  // namespace mjp
