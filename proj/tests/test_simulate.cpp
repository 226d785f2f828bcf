#include <doctest.h>

#include <cmath>
#include <vector>

#include "mjp/simulate.hpp"

using namespace mjp;

namespace {

RateKernel two_state(double a, double b) {
  StateSpace space(State{0}, State{1});
  std::vector<Reaction> rx;
  rx.push_back({"up", State{1}, a, [](const State&) { return 1.0; }, false, {}});
  rx.push_back({"down", State{-1}, b, [](const State&) { return 1.0; }, false, {}});
  return RateKernel(space, std::move(rx), Seasonality::none());
}

RateKernel pure_death(int n, double mu) {
  StateSpace space(State{0}, State{static_cast<Coord>(n)});
  std::vector<Reaction> rx;
  rx.push_back({"death", State{-1}, mu,
                [](const State& x) { return static_cast<double>(x[0]); },
                false, {}});
  return RateKernel(space, std::move(rx), Seasonality::none());
}

// Random homogeneous chain on {0..(n-1)} with +-1 jumps and per-state rates.
RateKernel random_chain(int n, RandomSource& rng) {
  StateSpace space(State{0}, State{static_cast<Coord>(n - 1)});
  std::vector<double> up(n), down(n);
  for (int i = 0; i < n; ++i) {
    up[i] = rng.uniform(0.2, 2.0);
    down[i] = rng.uniform(0.2, 2.0);
  }
  std::vector<Reaction> rx;
  rx.push_back({"up", State{1}, 1.0,
                [up](const State& x) { return up[x[0]]; }, false, {}});
  rx.push_back({"down", State{-1}, 1.0,
                [down](const State& x) { return down[x[0]]; }, false, {}});
  return RateKernel(space, std::move(rx), Seasonality::none());
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("pure death from one individual absorbs at the analytic rate") {
  RateKernel kernel = pure_death(1, 1.0);
  InitialDistribution init = InitialDistribution::point(State{1});
  RandomSource rng(101);
  const int n = 100000;
  int absorbed = 0;
  for (int i = 0; i < n; ++i) {
    Trajectory traj = gillespie(kernel, init, 1.0, rng);
    if (state_at(traj, 1.0) == State{0}) ++absorbed;
  }
  const double frac = static_cast<double>(absorbed) / n;
  CHECK(std::fabs(frac - (1.0 - std::exp(-1.0))) < 0.005);
}

TEST_CASE("zero exit rate means no jumps") {
  RateKernel kernel = pure_death(5, 0.7);
  // State 0 is absorbing: death structural factor is zero there.
  RandomSource rng(3);
  Trajectory traj =
      gillespie(kernel, InitialDistribution::point(State{0}), 10.0, rng);
  CHECK(traj.n_jumps() == 0);
}

TEST_CASE("two-state transition frequency matches the closed form") {
  RateKernel kernel = two_state(1.0, 2.0);
  InitialDistribution init = InitialDistribution::point(State{0});
  RandomSource rng(55);
  const int n = 100000;
  int at_one = 0;
  for (int i = 0; i < n; ++i) {
    Trajectory traj = gillespie(kernel, init, 1.0, rng);
    if (state_at(traj, 1.0) == State{1}) ++at_one;
  }
  const double expected = (1.0 / 3.0) * (1.0 - std::exp(-3.0));  // 0.3167
  CHECK(std::fabs(at_one / static_cast<double>(n) - expected) < 0.006);
}

TEST_CASE("uniformized simulation agrees with gillespie on the X_T marginal") {
  RateKernel kernel = two_state(1.0, 2.0);
  InitialDistribution init = InitialDistribution::point(State{0});
  RandomSource rng(77);
  const int n = 100000;
  const double expected = (1.0 / 3.0) * (1.0 - std::exp(-3.0));
  int at_one = 0;
  for (int i = 0; i < n; ++i) {
    AugmentedTrajectory aug = simulate_uniformized(kernel, 4.5, init, 1.0, rng);
    Trajectory traj = strip_virtual(aug);
    if (state_at(traj, 1.0) == State{1}) ++at_one;
  }
  const double frac = at_one / static_cast<double>(n);
  CHECK(std::fabs(frac - expected) < 0.006);

  // Chi-square goodness of fit against the closed form, 1 dof.
  const double e1 = n * expected, e0 = n * (1.0 - expected);
  const double chi2 = (at_one - e1) * (at_one - e1) / e1 +
                      (n - at_one - e0) * (n - at_one - e0) / e0;
  CHECK(chi2 < 10.83);  // p > 0.001
}

TEST_CASE("huge dominating rate yields roughly omega*T candidate epochs") {
  RateKernel kernel = two_state(1.0, 2.0);
  InitialDistribution init = InitialDistribution::point(State{0});
  RandomSource rng(91);
  const double omega = 300.0;  // 100x the max exit rate
  const int reps = 400;
  double total = 0.0;
  for (int i = 0; i < reps; ++i) {
    AugmentedTrajectory aug =
        simulate_uniformized(kernel, omega, init, 1.0, rng);
    total += static_cast<double>(aug.times.size() - 1);
  }
  const double mean = total / reps;
  const double se = std::sqrt(omega * 1.0 / reps);
  CHECK(std::fabs(mean - omega) < 3 * se);
}

TEST_CASE("zero exit rate makes every uniformized transition virtual") {
  RateKernel kernel = pure_death(5, 0.7);
  RandomSource rng(13);
  AugmentedTrajectory aug = simulate_uniformized(
      kernel, 2.0, InitialDistribution::point(State{0}), 5.0, rng);
  for (const State& s : aug.states) CHECK(s == State{0});
  CHECK(strip_virtual(aug).n_jumps() == 0);
}

TEST_CASE("omega below a realized exit rate is an invariant violation") {
  RateKernel kernel = two_state(5.0, 5.0);
  RandomSource rng(17);
  CHECK_THROWS_AS(simulate_uniformized(
                      kernel, 1.0, InitialDistribution::point(State{0}), 50.0,
                      rng),
                  InvariantViolation);
}

TEST_CASE("oracle at zero duration is the identity") {
  RateKernel kernel = two_state(1.0, 2.0);
  CHECK(transition_probability_oracle(kernel, 4.0, State{0}, State{0}, 0.0) ==
        1.0);
  CHECK(transition_probability_oracle(kernel, 4.0, State{0}, State{1}, 0.0) ==
        0.0);
}

TEST_CASE("oracle reproduces the two-state closed form") {
  RateKernel kernel = two_state(1.0, 2.0);
  const double expected = (1.0 / 3.0) * (1.0 - std::exp(-3.0));
  const double got =
      transition_probability_oracle(kernel, 3.0, State{0}, State{1}, 1.0);
  CHECK(got == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("oracle value does not depend on the dominating rate") {
  RateKernel kernel = two_state(1.0, 2.0);
  const double p3 =
      transition_probability_oracle(kernel, 3.0, State{0}, State{1}, 1.0);
  const double p30 =
      transition_probability_oracle(kernel, 30.0, State{0}, State{1}, 1.0);
  CHECK(std::fabs(p3 - p30) < 1e-10);
}

TEST_CASE("oracle dominating-rate invariance on random small chains") {
  RandomSource rng(2024);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform_int(4));
    RateKernel kernel = random_chain(n, rng);
    const double m = kernel.max_exit_bound();
    const State from{static_cast<Coord>(rng.uniform_int(n))};
    const State to{static_cast<Coord>(rng.uniform_int(n))};
    const double s = rng.uniform(0.3, 2.0);
    const double p1 =
        transition_probability_oracle(kernel, 1.1 * m, from, to, s);
    const double p2 =
        transition_probability_oracle(kernel, 7.3 * m, from, to, s);
    CHECK(std::fabs(p1 - p2) < 1e-8);
  }
}

TEST_CASE("same seed gives identical trajectories") {
  RateKernel kernel = two_state(1.0, 2.0);
  InitialDistribution init = InitialDistribution::point(State{0});
  RandomSource r1(4242), r2(4242);
  Trajectory a = gillespie(kernel, init, 20.0, r1);
  Trajectory b = gillespie(kernel, init, 20.0, r2);
  CHECK(a.times == b.times);
  CHECK(a.states == b.states);
}

}  // TEST_SUITE
