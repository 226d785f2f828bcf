#ifndef MJP_RANDOM_HPP
#define MJP_RANDOM_HPP

#include <array>
#include <cstdint>
#include <span>

namespace mjp {

// Self-contained random stream: xoshiro256** seeded through splitmix64.
// The standard library engines are portable but the distributions are not,
// so every variate used by the library is generated here from raw 64-bit
// draws. Identical seed + identical call sequence gives identical output.
//
// Parallel chains use split(stream_id): children are seeded by hashing the
// parent seed with the stream id, so any number of independent streams can
// be derived from one run seed.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  // Independent child stream; deterministic in (parent seed, stream id).
  RandomSource split(std::uint64_t stream_id) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53-bit resolution.
  double uniform01();
  double uniform(double a, double b);
  // Uniform integer on {0, ..., n-1}, n >= 1.
  std::uint64_t uniform_int(std::uint64_t n);

  double exponential(double rate);
  double normal(double mean, double sd);
  // Poisson via Knuth multiplication (mean < 10) or Hormann's transformed
  // rejection (PTRS) for larger means.
  std::int64_t poisson(double mean);
  // Gamma with given shape and *rate* (Marsaglia-Tsang squeeze).
  double gamma(double shape, double rate);
  // Normal(mean, sd) conditioned on the result exceeding `lower`.
  // Far tails use Robert's exponential proposal, so this never stalls.
  double truncated_normal_lower(double mean, double sd, double lower);

  // Index i with probability weights[i] / total; total must be positive
  // and equal to the sum of the weights.
  std::size_t categorical(std::span<const double> weights, double total);

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_ = 0;
};

}  // namespace mjp

#endif
