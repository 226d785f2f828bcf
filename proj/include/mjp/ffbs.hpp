#ifndef MJP_FFBS_HPP
#define MJP_FFBS_HPP

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "mjp/errors.hpp"
#include "mjp/random.hpp"
#include "mjp/state.hpp"
#include "mjp/trajectory.hpp"

namespace mjp {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// One filtering epoch. log_weight is aligned with the support's dense
// enumeration; an empty vector means unit weights. States with log_weight
// of -inf are pruned (no log(0) is ever taken downstream). A locked epoch
// forces the chain to hold, regardless of the transition model.
struct EpochStep {
  double time = 0.0;
  SupportBox support;
  std::vector<double> log_weight;
  bool locked = false;
  int obs_tag = -1;

  double state_log_weight(std::size_t idx) const {
    return log_weight.empty() ? 0.0 : log_weight[idx];
  }
};

// Transition-weight providers plug into the filter as a template parameter
// so the per-(state, predecessor) evaluation inlines. jump_deltas() lists
// the allowed displacements besides holding; an empty list means dense
// transitions (used by test oracles).
template <class TM>
concept TransitionWeightModel = requires(const TM& tm, const EpochStep& step,
                                         const State& a, const State& b) {
  { tm.jump_deltas() } -> std::convertible_to<std::span<const State>>;
  { tm.transition_weight(step, a, b) } -> std::convertible_to<double>;
};

// Type-erased provider for tests and small instances.
class CallbackTransitionModel {
 public:
  CallbackTransitionModel(
      std::vector<State> deltas,
      std::function<double(const EpochStep&, const State&, const State&)> fn)
      : deltas_(std::move(deltas)), fn_(std::move(fn)) {}

  std::span<const State> jump_deltas() const { return deltas_; }
  double transition_weight(const EpochStep& step, const State& from,
                           const State& to) const {
    return fn_(step, from, to);
  }

 private:
  std::vector<State> deltas_;
  std::function<double(const EpochStep&, const State&, const State&)> fn_;
};

struct FilterStats {
  std::uint64_t transition_evals = 0;
  std::size_t peak_support = 0;
};

struct FilterOptions {
  // Upper bound on the filtered-mass working set (bytes); the dense
  // forward pass refuses to start beyond it.
  std::size_t max_bytes = std::size_t{2} << 30;
  FilterStats* stats = nullptr;
};

// Per-epoch normalized filtered masses plus the accumulated log
// normalizing constant.
struct FilterState {
  std::vector<std::vector<double>> alpha;
  double log_normalizer = 0.0;
};

namespace detail {

inline void check_budget(std::span<const EpochStep> steps,
                         const FilterOptions& opts) {
  std::size_t doubles = 0;
  for (const EpochStep& s : steps) doubles += s.support.volume();
  if (doubles * sizeof(double) > opts.max_bytes)
    throw MemoryBudgetExceeded(
        "forward filter working set " +
        std::to_string(doubles * sizeof(double)) + " bytes exceeds budget " +
        std::to_string(opts.max_bytes));
}

}  // namespace detail

// Forward pass of the weighted filter:
//   alpha_0(x)  proportional to  pi(x) w_0(x)            on S_0,
//   alpha_i(x)  proportional to  w_i(x) sum_{x'} Ptilde(x',x) alpha_{i-1}(x')
// with per-epoch renormalization in linear space and weights applied
// through exp(log w - max log w) so a sweep over thousands of epochs cannot
// underflow. Throws InfeasibleFilter naming the epoch where all mass died.
template <TransitionWeightModel TM>
FilterState forward_filter(std::span<const EpochStep> steps,
                           const InitialDistribution& init, const TM& trans,
                           const FilterOptions& opts = {}) {
  if (steps.empty()) throw DomainError("forward_filter: no epochs");
  detail::check_budget(steps, opts);

  FilterState fs;
  fs.alpha.resize(steps.size());
  std::uint64_t tw_evals = 0;
  std::size_t peak = 0;

  // Epoch 0: initial distribution times weight.
  {
    const EpochStep& s0 = steps[0];
    std::vector<double>& a = fs.alpha[0];
    a.assign(s0.support.volume(), 0.0);
    peak = std::max(peak, a.size());
    double max_lw = kLogZero;
    for (const auto& [x, p] : init.mass()) {
      if (p <= 0.0 || !s0.support.contains(x)) continue;
      const double lw = s0.state_log_weight(s0.support.index_of(x));
      if (lw > max_lw) max_lw = lw;
    }
    if (max_lw == kLogZero) throw InfeasibleFilter(0);
    double total = 0.0;
    for (const auto& [x, p] : init.mass()) {
      if (p <= 0.0 || !s0.support.contains(x)) continue;
      const std::size_t idx = s0.support.index_of(x);
      const double v = p * std::exp(s0.state_log_weight(idx) - max_lw);
      a[idx] += v;
      total += v;
    }
    if (!(total > 0.0)) throw InfeasibleFilter(0);
    for (double& v : a) v /= total;
    fs.log_normalizer += std::log(total) + max_lw;
  }

  const std::span<const State> deltas = trans.jump_deltas();
  std::vector<double> incoming;
  for (std::size_t i = 1; i < steps.size(); ++i) {
    const EpochStep& step = steps[i];
    const EpochStep& prev_step = steps[i - 1];
    const std::vector<double>& prev = fs.alpha[i - 1];
    const std::size_t vol = step.support.volume();
    peak = std::max(peak, vol);
    incoming.assign(vol, 0.0);

    if (step.locked) {
      for (std::size_t idx = 0; idx < vol; ++idx) {
        const State x = step.support.state_at(idx);
        if (prev_step.support.contains(x))
          incoming[idx] = prev[prev_step.support.index_of(x)];
      }
    } else if (deltas.empty()) {
      // Dense: sum over the whole previous support.
      const std::size_t pvol = prev_step.support.volume();
      for (std::size_t idx = 0; idx < vol; ++idx) {
        const State x = step.support.state_at(idx);
        double m = 0.0;
        for (std::size_t pidx = 0; pidx < pvol; ++pidx) {
          const double mass = prev[pidx];
          if (mass == 0.0) continue;
          m += mass *
               trans.transition_weight(step, prev_step.support.state_at(pidx),
                                       x);
          ++tw_evals;
        }
        incoming[idx] = m;
      }
    } else {
      for (std::size_t idx = 0; idx < vol; ++idx) {
        const State x = step.support.state_at(idx);
        double m = 0.0;
        if (prev_step.support.contains(x)) {
          const double mass = prev[prev_step.support.index_of(x)];
          if (mass != 0.0) {
            m += mass * trans.transition_weight(step, x, x);
            ++tw_evals;
          }
        }
        for (const State& d : deltas) {
          const State from = x.minus(d);
          if (!prev_step.support.contains(from)) continue;
          const double mass = prev[prev_step.support.index_of(from)];
          if (mass == 0.0) continue;
          m += mass * trans.transition_weight(step, from, x);
          ++tw_evals;
        }
        incoming[idx] = m;
      }
    }

    // Apply this epoch's weights relative to their max over states that
    // actually received mass, then renormalize.
    double max_lw = kLogZero;
    if (step.log_weight.empty()) {
      max_lw = 0.0;
    } else {
      for (std::size_t idx = 0; idx < vol; ++idx)
        if (incoming[idx] > 0.0 && step.log_weight[idx] > max_lw)
          max_lw = step.log_weight[idx];
    }
    if (max_lw == kLogZero) throw InfeasibleFilter(static_cast<int>(i));

    std::vector<double>& a = fs.alpha[i];
    a.assign(vol, 0.0);
    double total = 0.0;
    for (std::size_t idx = 0; idx < vol; ++idx) {
      if (incoming[idx] == 0.0) continue;
      const double lw = step.state_log_weight(idx);
      if (lw == kLogZero) continue;
      const double v = incoming[idx] * std::exp(lw - max_lw);
      a[idx] = v;
      total += v;
    }
    if (!(total > 0.0)) throw InfeasibleFilter(static_cast<int>(i));
    for (double& v : a) v /= total;
    fs.log_normalizer += std::log(total) + max_lw;
  }

  if (opts.stats) {
    opts.stats->transition_evals = tw_evals;
    opts.stats->peak_support = peak;
  }
  return fs;
}

// Backward pass: x_m from alpha_m, then
//   P(x_i | x_{i+1})  proportional to  Ptilde(x_i, x_{i+1}) alpha_i(x_i),
// deterministic across locked epochs.
template <TransitionWeightModel TM>
std::vector<State> backward_sample(const FilterState& fs,
                                   std::span<const EpochStep> steps,
                                   const TM& trans, RandomSource& rng) {
  const std::size_t m = steps.size();
  if (fs.alpha.size() != m) throw DomainError("backward_sample: size mismatch");
  std::vector<State> out(m, State(steps[0].support.dim()));

  {
    const std::vector<double>& a = fs.alpha[m - 1];
    double total = 0.0;
    for (double v : a) total += v;
    out[m - 1] = steps[m - 1].support.state_at(rng.categorical(a, total));
  }

  const std::span<const State> deltas = trans.jump_deltas();
  std::vector<double> w;
  std::vector<State> cand;
  for (std::size_t i = m - 1; i-- > 0;) {
    const EpochStep& next_step = steps[i + 1];
    const State& next_state = out[i + 1];
    if (next_step.locked) {
      if (!steps[i].support.contains(next_state))
        throw InfeasibleFilter(static_cast<int>(i));
      out[i] = next_state;
      continue;
    }
    w.clear();
    cand.clear();
    const std::vector<double>& a = fs.alpha[i];
    auto add = [&](const State& from) {
      if (!steps[i].support.contains(from)) return;
      const double mass = a[steps[i].support.index_of(from)];
      if (mass == 0.0) return;
      const double tw = trans.transition_weight(next_step, from, next_state);
      if (tw <= 0.0) return;
      w.push_back(mass * tw);
      cand.push_back(from);
    };
    if (deltas.empty()) {
      const std::size_t vol = steps[i].support.volume();
      for (std::size_t idx = 0; idx < vol; ++idx)
        add(steps[i].support.state_at(idx));
    } else {
      add(next_state);
      for (const State& d : deltas) add(next_state.minus(d));
    }
    double total = 0.0;
    for (double v : w) total += v;
    if (!(total > 0.0)) throw InfeasibleFilter(static_cast<int>(i));
    out[i] = cand[rng.categorical(w, total)];
  }
  return out;
}

// Unit-step support growth for epochs without auxiliary evidence.
inline SupportBox expanding_support(const SupportBox& previous,
                                    const State& jump_magnitudes,
                                    const StateSpace& space) {
  return previous.expanded(jump_magnitudes, space);
}

}  // namespace mjp

#endif
