#include "mjp/random.hpp"

#include <cmath>

#include "mjp/errors.hpp"

namespace mjp {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

RandomSource RandomSource::split(std::uint64_t stream_id) const {
  // Hash (seed, stream) into a fresh seed; splitmix64 scrambles enough that
  // consecutive stream ids give unrelated states.
  std::uint64_t sm = seed_ ^ (0x5851f42d4c957f2dULL * (stream_id + 1));
  std::uint64_t child = splitmix64(sm);
  return RandomSource(child);
}

std::uint64_t RandomSource::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RandomSource::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double a, double b) {
  return a + (b - a) * uniform01();
}

std::uint64_t RandomSource::uniform_int(std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_int: n must be positive");
  // Rejection to kill modulo bias.
  const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw >= limit);
  return draw % n;
}

double RandomSource::exponential(double rate) {
  if (!(rate > 0.0)) throw DomainError("exponential: rate must be positive");
  return -std::log1p(-uniform01()) / rate;
}

double RandomSource::normal(double mean, double sd) {
  // Marsaglia polar method; the spare value is discarded to keep the
  // stream stateless between calls.
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return mean + sd * u * std::sqrt(-2.0 * std::log(s) / s);
}

std::int64_t RandomSource::poisson(double mean) {
  if (mean < 0.0 || !std::isfinite(mean))
    throw DomainError("poisson: mean must be finite and nonnegative");
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    const double threshold = std::exp(-mean);
    std::int64_t k = 0;
    double prod = uniform01();
    while (prod > threshold) {
      ++k;
      prod *= uniform01();
    }
    return k;
  }
  // Hormann (1993) PTRS transformed rejection.
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = uniform01() - 0.5;
    double v = uniform01();
    double us = 0.5 - std::fabs(u);
    double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    double rhs = -mean + k * log_mean - std::lgamma(k + 1.0);
    if (lhs <= rhs) return static_cast<std::int64_t>(k);
  }
}

double RandomSource::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw DomainError("gamma: shape and rate must be positive");
  if (shape < 1.0) {
    // Boost to shape+1 and scale back.
    const double u = uniform01();
    return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal(0.0, 1.0);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v / rate;
  }
}

double RandomSource::truncated_normal_lower(double mean, double sd,
                                            double lower) {
  if (!(sd > 0.0)) throw DomainError("truncated_normal_lower: sd <= 0");
  const double a = (lower - mean) / sd;
  if (a < 0.45) {
    // Plenty of mass above the bound; plain rejection.
    for (;;) {
      const double z = normal(0.0, 1.0);
      if (z > a) return mean + sd * z;
    }
  }
  // Robert (1995) one-sided exponential rejection.
  const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (;;) {
    const double z = a + exponential(alpha);
    const double w = z - alpha;
    if (std::log(uniform01()) <= -0.5 * w * w) return mean + sd * z;
  }
}

std::size_t RandomSource::categorical(std::span<const double> weights,
                                      double total) {
  if (!(total > 0.0)) throw DomainError("categorical: total weight <= 0");
  const double target = uniform01() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  // Round-off pushed the target past the accumulated sum; return the last
  // index with positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  throw DomainError("categorical: all weights zero");
}

}  // namespace mjp
