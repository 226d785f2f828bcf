#include <doctest.h>

#include <cmath>
#include <vector>

#include "mjp/random.hpp"

using namespace mjp;

TEST_SUITE("random") {

TEST_CASE("same seed, same call sequence, same output") {
  RandomSource a(1234), b(1234);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  RandomSource c(1234), d(1234);
  for (int i = 0; i < 100; ++i) {
    CHECK(c.uniform01() == d.uniform01());
    CHECK(c.poisson(23.5) == d.poisson(23.5));
    CHECK(c.gamma(3.2, 1.7) == d.gamma(3.2, 1.7));
  }
}

TEST_CASE("split streams differ from parent and each other") {
  RandomSource base(99);
  RandomSource s1 = base.split(1);
  RandomSource s2 = base.split(2);
  int collisions = 0;
  for (int i = 0; i < 64; ++i) {
    const auto v1 = s1.next_u64();
    const auto v2 = s2.next_u64();
    if (v1 == v2) ++collisions;
  }
  CHECK(collisions == 0);
  // Splitting is deterministic.
  RandomSource s1b = RandomSource(99).split(1);
  CHECK(s1b.next_u64() != 0);  // consume one
}

TEST_CASE("poisson moments, small and large mean") {
  RandomSource rng(7);
  for (double mean : {0.5, 3.0, 25.0, 400.0}) {
    const int n = 40000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = static_cast<double>(rng.poisson(mean));
      sum += v;
      sq += v * v;
    }
    const double m = sum / n;
    const double var = sq / n - m * m;
    const double se = std::sqrt(mean / n);
    CHECK(std::fabs(m - mean) < 5 * se);
    CHECK(std::fabs(var - mean) < 0.1 * mean);
  }
}

TEST_CASE("gamma moments") {
  RandomSource rng(11);
  const double shape = 3.0, rate = 5.0;
  const int n = 50000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.gamma(shape, rate);
  const double m = sum / n;
  const double se = std::sqrt(shape / (rate * rate) / n);
  CHECK(std::fabs(m - shape / rate) < 5 * se);
}

TEST_CASE("truncated normal stays above bound and matches tail mean") {
  RandomSource rng(13);
  // Far tail: E[Z | Z > a] = phi(a)/Phi(-a) for standard normal.
  const double a = 3.5;
  const int n = 20000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.truncated_normal_lower(0.0, 1.0, a);
    REQUIRE(z > a);
    sum += z;
  }
  const double phi = std::exp(-0.5 * a * a) / std::sqrt(2.0 * M_PI);
  const double tail = 0.5 * std::erfc(a / std::sqrt(2.0));
  const double expected = phi / tail;
  CHECK(sum / n == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("exponential mean") {
  RandomSource rng(17);
  const int n = 50000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.exponential(4.0);
  CHECK(sum / n == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("categorical respects weights") {
  RandomSource rng(19);
  std::vector<double> w = {1.0, 0.0, 3.0};
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 40000; ++i) ++counts[rng.categorical(w, 4.0)];
  CHECK(counts[1] == 0);
  CHECK(counts[0] / 40000.0 == doctest::Approx(0.25).epsilon(0.05));
  CHECK(counts[2] / 40000.0 == doctest::Approx(0.75).epsilon(0.02));
}

}  // TEST_SUITE
