#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "mjp/ffbs.hpp"

using namespace mjp;

namespace {

// Dense random instance on a 1-D support: per-epoch boxes, per-state
// weights, arbitrary strictly-positive transition matrices.
struct DenseInstance {
  std::vector<EpochStep> steps;
  InitialDistribution init;
  // transition weight tables, one per epoch >= 1, indexed
  // [epoch][from * width(to_box) ... ]; looked up by state value instead to
  // stay independent of box enumeration order.
  std::map<std::pair<int, std::pair<Coord, Coord>>, double> table;

  double tw(int epoch, Coord from, Coord to) const {
    auto it = table.find({epoch, {from, to}});
    return it == table.end() ? 0.0 : it->second;
  }
};

DenseInstance random_instance(int n_states, int n_epochs, RandomSource& rng,
                              bool with_locks = false) {
  DenseInstance inst;
  std::vector<std::pair<State, double>> mass;
  double total = 0.0;
  std::vector<double> raw(n_states);
  for (int s = 0; s < n_states; ++s) {
    raw[s] = rng.uniform(0.1, 1.0);
    total += raw[s];
  }
  for (int s = 0; s < n_states; ++s)
    mass.push_back({State{static_cast<Coord>(s)}, raw[s] / total});
  inst.init = InitialDistribution(mass);

  for (int e = 0; e < n_epochs; ++e) {
    EpochStep step;
    step.time = e;
    step.support =
        SupportBox(State{0}, State{static_cast<Coord>(n_states - 1)});
    step.log_weight.resize(step.support.volume());
    for (std::size_t i = 0; i < step.log_weight.size(); ++i)
      step.log_weight[i] = std::log(rng.uniform(0.05, 1.0));
    if (with_locks && e > 0 && rng.uniform01() < 0.25) step.locked = true;
    inst.steps.push_back(step);
    if (e > 0 && !step.locked) {
      for (Coord from = 0; from < n_states; ++from)
        for (Coord to = 0; to < n_states; ++to)
          inst.table[{e, {from, to}}] = rng.uniform(0.05, 1.0);
    }
  }
  return inst;
}

CallbackTransitionModel model_for(const DenseInstance& inst) {
  return CallbackTransitionModel(
      {}, [&inst](const EpochStep& step, const State& from, const State& to) {
        return inst.tw(static_cast<int>(step.time), from[0], to[0]);
      });
}

// Exhaustive path law: pi(x0) w0(x0) prod_i Ptilde(x_{i-1},x_i) w_i(x_i),
// honoring locked epochs as identity transitions.
std::map<std::vector<Coord>, double> enumerate_paths(
    const DenseInstance& inst) {
  std::map<std::vector<Coord>, double> law;
  const int m = static_cast<int>(inst.steps.size());
  std::vector<Coord> path(m);
  double total = 0.0;
  std::function<void(int, double)> rec = [&](int epoch, double w) {
    if (w == 0.0) return;
    if (epoch == m) {
      law[path] += w;
      total += w;
      return;
    }
    const EpochStep& step = inst.steps[epoch];
    const std::size_t vol = step.support.volume();
    for (std::size_t idx = 0; idx < vol; ++idx) {
      const Coord x = step.support.state_at(idx)[0];
      double factor = std::exp(step.state_log_weight(idx));
      if (epoch == 0) {
        factor *= inst.init.prob(State{x});
      } else if (step.locked) {
        if (x != path[epoch - 1]) continue;
      } else {
        factor *= inst.tw(epoch, path[epoch - 1], x);
      }
      path[epoch] = x;
      rec(epoch + 1, w * factor);
    }
  };
  rec(0, 1.0);
  for (auto& [k, v] : law) v /= total;
  return law;
}

double sampled_tv(const DenseInstance& inst, int n_draws, RandomSource& rng) {
  auto model = model_for(inst);
  FilterState fs = forward_filter<CallbackTransitionModel>(
      inst.steps, inst.init, model);
  std::map<std::vector<Coord>, double> counts;
  for (int d = 0; d < n_draws; ++d) {
    std::vector<State> draw =
        backward_sample<CallbackTransitionModel>(fs, inst.steps, model, rng);
    std::vector<Coord> key(draw.size());
    for (std::size_t i = 0; i < draw.size(); ++i) key[i] = draw[i][0];
    counts[key] += 1.0;
  }
  const auto law = enumerate_paths(inst);
  double tv = 0.0;
  for (const auto& [k, p] : law) {
    auto it = counts.find(k);
    const double phat = it == counts.end() ? 0.0 : it->second / n_draws;
    tv += std::fabs(phat - p);
  }
  for (const auto& [k, c] : counts)
    if (!law.count(k)) tv += c / n_draws;
  return 0.5 * tv;
}

}  // namespace

TEST_SUITE("ffbs") {

TEST_CASE("single epoch with uniform weights reproduces the prior") {
  DenseInstance inst;
  inst.init = InitialDistribution({{State{0}, 0.3}, {State{1}, 0.7}});
  EpochStep s0;
  s0.support = SupportBox(State{0}, State{1});
  inst.steps.push_back(s0);
  auto model = model_for(inst);
  FilterState fs =
      forward_filter<CallbackTransitionModel>(inst.steps, inst.init, model);
  CHECK(fs.alpha[0][0] == doctest::Approx(0.3));
  CHECK(fs.alpha[0][1] == doctest::Approx(0.7));
}

TEST_CASE("two-state three-epoch joint law matches enumeration") {
  RandomSource rng(321);
  DenseInstance inst = random_instance(2, 3, rng);
  const double tv = sampled_tv(inst, 100000, rng);
  CHECK(tv < 0.01);
}

TEST_CASE("locked epoch applies weights without moving mass") {
  RandomSource rng(11);
  DenseInstance inst = random_instance(3, 2, rng);
  inst.steps[1].locked = true;
  auto model = model_for(inst);
  FilterState fs =
      forward_filter<CallbackTransitionModel>(inst.steps, inst.init, model);
  // alpha_1(x) proportional to w_1(x) alpha_0(x)
  std::vector<double> expect(3);
  double total = 0.0;
  for (int s = 0; s < 3; ++s) {
    expect[s] = fs.alpha[0][s] * std::exp(inst.steps[1].log_weight[s]);
    total += expect[s];
  }
  for (int s = 0; s < 3; ++s)
    CHECK(fs.alpha[1][s] == doctest::Approx(expect[s] / total).epsilon(1e-12));
}

TEST_CASE("all epochs locked give a constant path") {
  RandomSource rng(17);
  DenseInstance inst = random_instance(3, 4, rng);
  for (std::size_t e = 1; e < inst.steps.size(); ++e)
    inst.steps[e].locked = true;
  auto model = model_for(inst);
  FilterState fs =
      forward_filter<CallbackTransitionModel>(inst.steps, inst.init, model);
  for (int rep = 0; rep < 50; ++rep) {
    auto path =
        backward_sample<CallbackTransitionModel>(fs, inst.steps, model, rng);
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i] == path[0]);
  }
}

TEST_CASE("deterministic weights select the unique path") {
  DenseInstance inst;
  inst.init = InitialDistribution({{State{0}, 0.5}, {State{1}, 0.5}});
  for (int e = 0; e < 3; ++e) {
    EpochStep step;
    step.time = e;
    step.support = SupportBox(State{0}, State{1});
    step.log_weight = {kLogZero, kLogZero};
    step.log_weight[e % 2] = 0.0;  // only state e%2 allowed
    inst.steps.push_back(step);
    if (e > 0)
      for (Coord a = 0; a < 2; ++a)
        for (Coord b = 0; b < 2; ++b) inst.table[{e, {a, b}}] = 1.0;
  }
  auto model = model_for(inst);
  RandomSource rng(5);
  FilterState fs =
      forward_filter<CallbackTransitionModel>(inst.steps, inst.init, model);
  for (int rep = 0; rep < 20; ++rep) {
    auto path =
        backward_sample<CallbackTransitionModel>(fs, inst.steps, model, rng);
    CHECK(path[0] == State{0});
    CHECK(path[1] == State{1});
    CHECK(path[2] == State{0});
  }
}

TEST_CASE("three-state four-epoch pairwise marginals match enumeration") {
  RandomSource rng(99);
  DenseInstance inst = random_instance(3, 4, rng);
  auto model = model_for(inst);
  FilterState fs =
      forward_filter<CallbackTransitionModel>(inst.steps, inst.init, model);
  const auto law = enumerate_paths(inst);

  const int n = 100000;
  std::map<std::pair<int, std::pair<Coord, Coord>>, double> emp;
  for (int d = 0; d < n; ++d) {
    auto path =
        backward_sample<CallbackTransitionModel>(fs, inst.steps, model, rng);
    for (int e = 1; e < 4; ++e) emp[{e, {path[e - 1][0], path[e][0]}}] += 1.0;
  }
  for (int e = 1; e < 4; ++e) {
    for (Coord a = 0; a < 3; ++a) {
      for (Coord b = 0; b < 3; ++b) {
        double p = 0.0;
        for (const auto& [k, v] : law)
          if (k[e - 1] == a && k[e] == b) p += v;
        const double phat = emp[{e, {a, b}}] / n;
        const double se = std::sqrt(std::max(p * (1 - p), 1e-9) / n);
        CHECK(std::fabs(phat - p) <= 3.5 * se + 1e-9);
      }
    }
  }
}

TEST_CASE("scaling weights or transition rows leaves the law unchanged") {
  RandomSource rng(123);
  DenseInstance inst = random_instance(2, 3, rng);
  auto law1 = enumerate_paths(inst);

  DenseInstance scaled = inst;
  for (auto& lw : scaled.steps[1].log_weight) lw += std::log(37.0);
  // Whole transition matrix of epoch 2 rescaled; a per-epoch constant fades
  // in the normalization, which is why dominating-rate factors can be
  // dropped from the weight matrices.
  for (Coord from = 0; from < 2; ++from)
    for (Coord to = 0; to < 2; ++to) scaled.table[{2, {from, to}}] *= 5.5;
  // The sampled law from the scaled instance should match the original
  // enumeration.
  RandomSource rng2(7);
  const int n = 60000;
  auto model = model_for(scaled);
  FilterState fs = forward_filter<CallbackTransitionModel>(scaled.steps,
                                                           scaled.init, model);
  std::map<std::vector<Coord>, double> counts;
  for (int d = 0; d < n; ++d) {
    auto path =
        backward_sample<CallbackTransitionModel>(fs, scaled.steps, model, rng2);
    counts[{path[0][0], path[1][0], path[2][0]}] += 1.0;
  }
  double tv = 0.0;
  for (const auto& [k, p] : law1) {
    auto it = counts.find(k);
    const double phat = it == counts.end() ? 0.0 : it->second / n;
    tv += std::fabs(phat - p);
  }
  CHECK(0.5 * tv < 0.015);
}

TEST_CASE("all-zero mass names the offending epoch") {
  RandomSource rng(31);
  DenseInstance inst = random_instance(2, 3, rng);
  for (auto& lw : inst.steps[2].log_weight) lw = kLogZero;
  auto model = model_for(inst);
  try {
    forward_filter<CallbackTransitionModel>(inst.steps, inst.init, model);
    FAIL("expected InfeasibleFilter");
  } catch (const InfeasibleFilter& err) {
    CHECK(err.epoch == 2);
  }
}

TEST_CASE("sparse transitions only touch neighbor predecessors") {
  // Birth-death style deltas; per-epoch work must be O(support * degree),
  // which the evaluation counter makes visible.
  const int width = 1000;
  std::vector<EpochStep> steps;
  for (int e = 0; e < 4; ++e) {
    EpochStep step;
    step.time = e;
    step.support = SupportBox(State{0}, State{width - 1});
    steps.push_back(step);
  }
  std::vector<std::pair<State, double>> mass;
  for (int s = 0; s < width; ++s)
    mass.push_back({State{static_cast<Coord>(s)}, 1.0 / width});
  InitialDistribution init(mass);
  CallbackTransitionModel model(
      {State{1}, State{-1}},
      [](const EpochStep&, const State&, const State&) { return 1.0; });
  FilterStats stats;
  FilterOptions opts;
  opts.stats = &stats;
  forward_filter<CallbackTransitionModel>(steps, init, model, opts);
  // 3 transition epochs, <= 3 evaluations (self + two neighbors) per state.
  CHECK(stats.transition_evals <= 3u * width * 3u);
  CHECK(stats.peak_support == static_cast<std::size_t>(width));
}

TEST_CASE("memory budget is enforced before filtering") {
  std::vector<EpochStep> steps;
  for (int e = 0; e < 64; ++e) {
    EpochStep step;
    step.support = SupportBox(State{0}, State{4095});
    steps.push_back(step);
  }
  InitialDistribution init = InitialDistribution::point(State{0});
  CallbackTransitionModel model(
      {}, [](const EpochStep&, const State&, const State&) { return 1.0; });
  FilterOptions opts;
  opts.max_bytes = 1024;
  CHECK_THROWS_AS(
      forward_filter<CallbackTransitionModel>(steps, init, model, opts),
      MemoryBudgetExceeded);
}

TEST_CASE("expanding support grows by unit jumps and clips at bounds") {
  StateSpace space(State{0}, State{100});
  SupportBox prev(State{3}, State{7});
  SupportBox grown = expanding_support(prev, State{1}, space);
  CHECK(grown.lo() == State{2});
  CHECK(grown.hi() == State{8});
  SupportBox low(State{0}, State{2});
  SupportBox grown_low = expanding_support(low, State{1}, space);
  CHECK(grown_low.lo() == State{0});
  CHECK(grown_low.hi() == State{3});
}

TEST_CASE("alternating constrained and free epochs contract then grow") {
  StateSpace space(State{0}, State{50});
  SupportBox window(State{20}, State{24});  // width 5 at an evidence epoch
  SupportBox s = window;
  for (int i = 0; i < 3; ++i) s = expanding_support(s, State{1}, space);
  CHECK(s.volume() == 11);  // grew to width 11 over lag 3
  // New evidence epoch contracts back to its own window.
  SupportBox next_window(State{18}, State{25});
  SupportBox contracted = s.intersect(next_window);
  CHECK(contracted.volume() <= next_window.volume());
}

}  // TEST_SUITE
