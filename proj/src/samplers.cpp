#include "mjp/samplers.hpp"

#include <algorithm>
#include <cmath>

#include "mjp/errors.hpp"

namespace mjp {

// ---------------------------------------------------------------------------
// PsiOperator

PsiOperator PsiOperator::exit_factor(double factor) {
  if (!(factor > 0.0)) throw DomainError("psi: factor must be positive");
  PsiOperator p;
  p.kind_ = Kind::ExitFactor;
  p.value_ = factor;
  return p;
}

PsiOperator PsiOperator::vanilla() {
  PsiOperator p;
  p.kind_ = Kind::Complement;
  p.value_ = 0.0;
  return p;
}

PsiOperator PsiOperator::constant(double value) {
  if (!(value > 0.0)) throw DomainError("psi: constant must be positive");
  PsiOperator p;
  p.kind_ = Kind::Constant;
  p.value_ = value;
  return p;
}

double PsiOperator::value(const RateKernel& kernel, double omega,
                          const State& x, double t) const {
  switch (kind_) {
    case Kind::ExitFactor:
      return std::max(value_ * kernel.exit_rate(x, t), floor_);
    case Kind::Complement:
      return omega - kernel.exit_rate(x, t);
    case Kind::Constant:
      return value_;
  }
  return 0.0;
}

double PsiOperator::max_over_time(const RateKernel& kernel, double omega,
                                  const State& x) const {
  switch (kind_) {
    case Kind::ExitFactor:
      return std::max(value_ * kernel.exit_rate_max(x), floor_);
    case Kind::Complement:
      return omega - kernel.exit_rate_min(x);
    case Kind::Constant:
      return value_;
  }
  return 0.0;
}

double PsiOperator::min_over_time(const RateKernel& kernel, double omega,
                                  const State& x) const {
  switch (kind_) {
    case Kind::ExitFactor:
      return std::max(value_ * kernel.exit_rate_min(x), floor_);
    case Kind::Complement:
      return omega - kernel.exit_rate_max(x);
    case Kind::Constant:
      return value_;
  }
  return 0.0;
}

double PsiOperator::integral(const RateKernel& kernel, double omega,
                             const State& x, double a, double b) const {
  switch (kind_) {
    case Kind::ExitFactor:
      return std::max(value_ * kernel.exit_integral(x, a, b),
                      floor_ * (b - a));
    case Kind::Complement:
      return omega * (b - a) - kernel.exit_integral(x, a, b);
    case Kind::Constant:
      return value_ * (b - a);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

double resolve_omega(const RateKernel& kernel, double factor) {
  const double sup = kernel.max_exit_bound();
  if (sup == 0.0) return 1.0;
  return std::max(factor, 1.0 + 1e-6) * sup;
}

AugmentedTrajectory sample_candidate_times(const Trajectory& traj,
                                           const std::vector<int>& jump_tags,
                                           const RateKernel& kernel,
                                           const PsiOperator& psi,
                                           double omega, RandomSource& rng) {
  traj.validate();
  if (!jump_tags.empty() && jump_tags.size() != traj.times.size())
    throw DomainError("sample_candidate_times: tags misaligned");

  AugmentedTrajectory aug;
  aug.horizon = traj.horizon;
  const std::size_t n = traj.times.size();
  for (std::size_t i = 0; i < n; ++i) {
    aug.times.push_back(traj.times[i]);
    aug.states.push_back(traj.states[i]);
    aug.obs_tag.push_back(jump_tags.empty() ? -1 : jump_tags[i]);

    const double t_end = (i + 1 < n) ? traj.times[i + 1] : traj.horizon;
    const State& x = traj.states[i];
    const double bound = psi.max_over_time(kernel, omega, x);
    if (bound <= 0.0) continue;
    double t = traj.times[i];
    while (true) {
      t += rng.exponential(bound);
      if (t >= t_end) break;
      const double rate = psi.value(kernel, omega, x, t);
      if (rate > bound * (1.0 + 1e-9))
        throw InvariantViolation("candidate thinning bound below psi");
      if (rng.uniform01() * bound < rate) {
        aug.times.push_back(t);
        aug.states.push_back(x);
        aug.obs_tag.push_back(-1);
      }
    }
  }

  // Interleaving keeps times sorted only if each interval's candidates come
  // after the interval start; they do, but the real jump at t_{i+1} is
  // appended on the next loop iteration, so re-sort by a stable merge.
  // Candidates were generated in increasing order within each interval and
  // intervals are processed in order, so a full sort is a no-op in practice.
  for (std::size_t i = 1; i < aug.times.size(); ++i)
    if (aug.times[i] <= aug.times[i - 1])
      throw InvariantViolation("candidate times not increasing");
  return aug;
}

WeightingEvidence sample_compensation(const AugmentedTrajectory& aug,
                                      double omega, const PsiOperator& psi,
                                      const RateKernel& kernel,
                                      RandomSource& rng,
                                      SamplerVariant variant) {
  WeightingEvidence ev;
  const std::size_t m = aug.times.size();

  if (variant == SamplerVariant::NonstationaryReduced ||
      variant == SamplerVariant::VanillaUniformization)
    return ev;  // deterministic weights, or none

  if (variant == SamplerVariant::StationaryReduced) {
    if (!kernel.time_homogeneous())
      throw UnsupportedError(
          "StationaryReduced requires a time-homogeneous kernel");
    ev.counts.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double t_end = (i + 1 < m) ? aug.times[i + 1] : aug.horizon;
      const double dt = t_end - aug.times[i];
      const double rate = omega - kernel.exit_rate(aug.states[i], 0.0) -
                          psi.value(kernel, omega, aug.states[i], 0.0);
      if (rate < -1e-9 * omega)
        throw InvariantViolation("negative compensating rate");
      ev.counts[i] = rate > 0.0 ? rng.poisson(rate * dt) : 0;
    }
    return ev;
  }

  // Naive: thinning at rate omega - exit - psi within each epoch interval.
  ev.times.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double t_end = (i + 1 < m) ? aug.times[i + 1] : aug.horizon;
    const State& x = aug.states[i];
    const double bound = omega - kernel.exit_rate_min(x) -
                         psi.min_over_time(kernel, omega, x);
    if (bound <= 0.0) continue;
    double t = aug.times[i];
    while (true) {
      t += rng.exponential(bound);
      if (t >= t_end) break;
      const double rate = omega - kernel.exit_rate(x, t) -
                          psi.value(kernel, omega, x, t);
      if (rate < -1e-9 * omega)
        throw InvariantViolation("negative compensating rate");
      if (rate > bound * (1.0 + 1e-9))
        throw InvariantViolation("compensation thinning bound too small");
      if (rate > 0.0 && rng.uniform01() * bound < rate)
        ev.times[i].push_back(t);
    }
  }
  return ev;
}

// ---------------------------------------------------------------------------
// SweepTransitions

SweepTransitions::SweepTransitions(const RateKernel& kernel,
                                   const PsiOperator& psi, double omega,
                                   const ObservationSet* obs)
    : kernel_(&kernel), psi_(psi), omega_(omega), obs_(obs) {
  for (const Reaction& rn : kernel.reactions()) {
    if (std::find(deltas_.begin(), deltas_.end(), rn.delta) == deltas_.end())
      deltas_.push_back(rn.delta);
  }
  jump_obs_ = obs_ != nullptr && obs_->kind == ObservationSet::Kind::JumpTimes;
}

double SweepTransitions::seasonal_at(double t) const {
  if (t != cache_t_) {
    cache_t_ = t;
    cache_r_ = kernel_->seasonality().value(t);
  }
  return cache_r_;
}

double SweepTransitions::rate_at(std::size_t k, const State& x,
                                 double t) const {
  const Reaction& rn = kernel_->reactions()[k];
  const double h = kernel_->structural_factor(k, x);
  if (h <= 0.0) return 0.0;
  double time_factor = 1.0;
  if (rn.time_profile)
    time_factor = rn.time_profile(t);
  else if (rn.seasonal && kernel_->seasonality().enabled)
    time_factor = seasonal_at(t);
  return rn.rate * h * time_factor;
}

double SweepTransitions::exit_at(const State& x, double t) const {
  double total = 0.0;
  for (std::size_t k = 0; k < kernel_->reactions().size(); ++k)
    total += rate_at(k, x, t);
  return total;
}

double SweepTransitions::transition_weight(const EpochStep& step,
                                           const State& from,
                                           const State& to) const {
  const double t = step.time;

  if (step.obs_tag >= 0) {
    // An observed jump is pinned to this epoch: self-transitions are
    // impossible and only detected reactions contribute.
    if (from == to) return 0.0;
    double w = 0.0;
    const auto& reactions = kernel_->reactions();
    for (std::size_t k = 0; k < reactions.size(); ++k) {
      if (!(from.plus(reactions[k].delta) == to)) continue;
      const double p = jump_obs_ ? obs_->detect_prob[k] : 0.0;
      if (p > 0.0) w += rate_at(k, from, t) * p;
    }
    return w;
  }

  if (from == to) {
    switch (psi_.kind()) {
      case PsiOperator::Kind::Constant:
        return psi_.parameter();
      case PsiOperator::Kind::ExitFactor:
        return std::max(psi_.parameter() * exit_at(to, t), psi_.floor_value());
      case PsiOperator::Kind::Complement:
        return omega_ - exit_at(to, t);
    }
  }

  double w = 0.0;
  const auto& reactions = kernel_->reactions();
  for (std::size_t k = 0; k < reactions.size(); ++k) {
    if (!(from.plus(reactions[k].delta) == to)) continue;
    double rate = rate_at(k, from, t);
    if (jump_obs_) rate *= 1.0 - obs_->detect_prob[k];
    w += rate;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Support composition: constraint windows intersected with exact forward /
// backward reachability cones (jump magnitudes bound per-epoch movement).

namespace {

std::optional<SupportBox> intersect_opt(const std::optional<SupportBox>& a,
                                        const std::optional<SupportBox>& b) {
  if (!a) return b;
  if (!b) return a;
  return a->intersect(*b);
}

SupportBox init_bounding_box(const InitialDistribution& init) {
  const int d = init.mass().front().first.dim();
  State lo(d), hi(d);
  bool first = true;
  for (const auto& [x, p] : init.mass()) {
    if (p <= 0.0) continue;
    if (first) {
      lo = x;
      hi = x;
      first = false;
      continue;
    }
    for (int c = 0; c < d; ++c) {
      lo[c] = std::min(lo[c], x[c]);
      hi[c] = std::max(hi[c], x[c]);
    }
  }
  return SupportBox(lo, hi);
}

std::vector<SupportBox> compose_supports(
    const std::vector<std::optional<SupportBox>>& windows,
    const InitialDistribution& init, const State& magnitudes,
    const StateSpace& space) {
  const std::size_t m = windows.size();
  std::vector<SupportBox> fcone(m);
  std::optional<SupportBox> cone = init_bounding_box(init);
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) cone = cone->expanded(magnitudes, space);
    auto merged = intersect_opt(cone, windows[i]);  // throws if empty
    fcone[i] = *merged;
    cone = fcone[i];
  }
  std::vector<SupportBox> out(m);
  std::optional<SupportBox> back;
  for (std::size_t i = m; i-- > 0;) {
    if (back) back = back->expanded(magnitudes, space);
    back = intersect_opt(back, windows[i]);
    out[i] = back ? fcone[i].intersect(*back) : fcone[i];
    back = out[i];
  }
  return out;
}

}  // namespace

std::vector<EpochStep> build_epoch_steps(const AugmentedTrajectory& aug,
                                         const WeightingEvidence& evidence,
                                         const SamplerConfig& config,
                                         double omega,
                                         const RateKernel& kernel,
                                         const ObservationSet* obs,
                                         const InitialDistribution& init,
                                         const State& jump_magnitudes,
                                         const PathConstraints* constraints) {
  const std::size_t m = aug.times.size();
  const StateSpace& space = kernel.space();
  std::vector<EpochStep> steps(m);

  // Supports: constraint windows (when given) intersected with cones.
  {
    std::vector<std::optional<SupportBox>> windows(m);
    if (constraints) {
      for (std::size_t i = 0; i < m; ++i) windows[i] = constraints->supports[i];
    }
    std::vector<SupportBox> supports;
    try {
      supports = compose_supports(windows, init, jump_magnitudes, space);
    } catch (const DomainError&) {
      throw InfeasibleFilter(-1);  // empty window intersection
    }
    for (std::size_t i = 0; i < m; ++i) {
      steps[i].time = aug.times[i];
      steps[i].support = supports[i];
      steps[i].obs_tag = aug.obs_tag.empty() ? -1 : aug.obs_tag[i];
    }
  }

  // State observations are binned onto the epoch covering their time.
  std::vector<std::vector<std::size_t>> binned(m);
  if (obs != nullptr && obs->kind != ObservationSet::Kind::JumpTimes) {
    for (std::size_t r = 0; r < obs->size(); ++r) {
      const double tr = obs->times[r];
      if (tr < 0.0 || tr > aug.horizon) continue;
      const auto it =
          std::upper_bound(aug.times.begin(), aug.times.end(), tr);
      const std::size_t epoch =
          static_cast<std::size_t>(it - aug.times.begin()) - 1;
      binned[epoch].push_back(r);
    }
  }

  const bool seasonal_split_ok = [&] {
    for (const Reaction& rn : kernel.reactions())
      if (rn.time_profile) return false;
    return true;
  }();

  for (std::size_t i = 0; i < m; ++i) {
    EpochStep& step = steps[i];
    const std::size_t vol = step.support.volume();

    // Variant importance weights; the debug shift attaches interval j's
    // evidence to epoch i (j == i in real runs).
    const std::size_t j =
        config.debug_weight_shift == 0
            ? i
            : static_cast<std::size_t>(std::clamp<long>(
                  static_cast<long>(i) - config.debug_weight_shift, 0,
                  static_cast<long>(m) - 1));
    const double t_start = aug.times[j];
    const double t_end = (j + 1 < m) ? aug.times[j + 1] : aug.horizon;

    const bool need_variant_weight =
        (config.variant == SamplerVariant::Naive && !evidence.times.empty() &&
         !evidence.times[j].empty()) ||
        (config.variant == SamplerVariant::StationaryReduced &&
         !evidence.counts.empty() && evidence.counts[j] > 0) ||
        config.variant == SamplerVariant::NonstationaryReduced;
    const bool need_weights =
        need_variant_weight || !binned[i].empty() ||
        (constraints && !constraints->log_adjust[i].empty());
    if (!need_weights) continue;

    step.log_weight.assign(vol, 0.0);

    if (need_variant_weight) {
      for (std::size_t idx = 0; idx < vol; ++idx) {
        const State x = step.support.state_at(idx);
        double lw = 0.0;
        switch (config.variant) {
          case SamplerVariant::Naive: {
            for (double s : evidence.times[j]) {
              const double base =
                  1.0 - (kernel.exit_rate(x, s) +
                         config.psi.value(kernel, omega, x, s)) /
                            omega;
              if (base < -1e-9) throw InvariantViolation("psi bound violated");
              if (base <= 0.0) {
                lw = kLogZero;
                break;
              }
              lw += std::log(base);
            }
            break;
          }
          case SamplerVariant::StationaryReduced: {
            const double base =
                1.0 - (kernel.exit_rate(x, 0.0) +
                       config.psi.value(kernel, omega, x, 0.0)) /
                          omega;
            if (base < -1e-9) throw InvariantViolation("psi bound violated");
            lw = base <= 0.0
                     ? kLogZero
                     : static_cast<double>(evidence.counts[j]) * std::log(base);
            break;
          }
          case SamplerVariant::NonstationaryReduced: {
            double exit_int;
            if (seasonal_split_ok) {
              const RateKernel::ExitSplit es = kernel.exit_split(x);
              exit_int = es.fixed * (t_end - t_start) +
                         es.seasonal *
                             kernel.seasonality().integral(t_start, t_end);
            } else {
              exit_int = kernel.exit_integral(x, t_start, t_end);
            }
            const double psi_int =
                config.psi.integral(kernel, omega, x, t_start, t_end);
            lw = -(exit_int + psi_int);
            break;
          }
          default:
            break;
        }
        step.log_weight[idx] = lw;
      }
    }

    for (std::size_t r : binned[i]) {
      for (std::size_t idx = 0; idx < vol; ++idx) {
        if (step.log_weight[idx] == kLogZero) continue;
        step.log_weight[idx] += state_observation_log_density(
            *obs, r, step.support.state_at(idx));
      }
    }

    if (constraints && !constraints->log_adjust[i].empty()) {
      const std::vector<double>& adj = constraints->log_adjust[i];
      for (std::size_t idx = 0; idx < vol; ++idx)
        step.log_weight[idx] += adj[idx];
    }
  }
  return steps;
}

// ---------------------------------------------------------------------------
// Constraint drawing and the full sweep.

namespace {

// Envelope windows and adjustments are generated against the final support
// boxes, so the adjust vectors stay aligned with the enumeration the filter
// uses.
struct DrawnConstraints {
  PathConstraints path;
  bool any = false;
};

DrawnConstraints draw_sweep_constraints(const AugmentedTrajectory& aug,
                                        const SamplerConfig& config,
                                        const SweepContext& ctx,
                                        const RateKernel& kernel,
                                        const InitialDistribution& init,
                                        const State& magnitudes,
                                        RandomSource& rng) {
  DrawnConstraints out;
  const std::size_t m = aug.times.size();
  const StateSpace& space = kernel.space();
  out.path.supports.assign(m, SupportBox());
  out.path.log_adjust.assign(m, {});
  out.path.bridge_lock.assign(m, 0);

  std::vector<std::optional<SupportBox>> windows(m);

  std::optional<NormalEnvelope> normal;
  std::optional<GammaEnvelope> gamma;
  const MeanPath* xi = ctx.mean_path;
  const double t_off = ctx.mean_path_offset;

  if (config.normal_envelope || config.gamma_envelope) {
    if (xi == nullptr)
      throw DomainError("envelope configured without a reference mean path");
  }

  if (config.normal_envelope) {
    // Draw against a shifted wrapper by shifting epoch times.
    AugmentedTrajectory shifted = aug;
    for (double& t : shifted.times) t += t_off;
    normal = draw_normal_envelope(shifted, *xi, *config.normal_envelope, rng);
    for (std::size_t i = 1; i < m; ++i)
      windows[i] = normal_window(*normal, *xi, i, aug.times[i] + t_off, space,
                                 aug.states[i]);
    out.any = true;
  }
  if (config.gamma_envelope) {
    AugmentedTrajectory shifted = aug;
    for (double& t : shifted.times) t += t_off;
    gamma = draw_gamma_envelope(shifted, *xi, *config.gamma_envelope,
                                magnitudes, rng);
    for (std::size_t jdx = 0; jdx < gamma->evidence_epochs.size(); ++jdx) {
      const std::size_t i = gamma->evidence_epochs[jdx];
      auto w = gamma_window(*gamma, *xi, jdx, aug.times[i] + t_off, space,
                            aug.states[i]);
      windows[i] = windows[i] ? windows[i]->intersect(w) : w;
    }
    out.any = true;
  }
  if (config.split) {
    PathConstraints split =
        apply_split(aug, *config.split, space, magnitudes, rng);
    for (std::size_t i = 0; i < m; ++i) {
      windows[i] = windows[i] ? windows[i]->intersect(split.supports[i])
                              : split.supports[i];
      out.path.bridge_lock[i] = split.bridge_lock[i];
    }
    out.any = true;
  }

  std::vector<SupportBox> supports;
  try {
    supports = compose_supports(windows, init, magnitudes, space);
  } catch (const DomainError&) {
    throw InfeasibleFilter(-1);
  }
  out.path.supports = std::move(supports);

  // Envelope weight adjustments on the final boxes.
  for (std::size_t i = 1; i < m; ++i) {
    std::vector<double>& adj = out.path.log_adjust[i];
    if (normal) {
      normal_log_adjust(*normal, *xi, i, aug.times[i] + t_off,
                        out.path.supports[i], adj);
    }
    std::size_t jdx = 0;
    if (gamma && is_evidence_epoch(*gamma, i, &jdx)) {
      if (adj.empty()) {
        gamma_log_adjust(*gamma, *xi, jdx, aug.times[i] + t_off,
                         out.path.supports[i], adj);
      } else {
        std::vector<double> extra;
        gamma_log_adjust(*gamma, *xi, jdx, aug.times[i] + t_off,
                         out.path.supports[i], extra);
        for (std::size_t k = 0; k < adj.size(); ++k) adj[k] += extra[k];
      }
    }
  }
  return out;
}

// Compatibility: the generating path must stay strictly inside the drawn
// constraint set (positive auxiliary density), otherwise the construction
// is wrong.
void assert_compatible(const AugmentedTrajectory& aug,
                       const PathConstraints& path) {
  for (std::size_t i = 0; i < aug.times.size(); ++i) {
    if (!path.supports[i].contains(aug.states[i]))
      throw InvariantViolation("current path left its own constraint set");
    if (!path.log_adjust[i].empty()) {
      const std::size_t idx = path.supports[i].index_of(aug.states[i]);
      if (path.log_adjust[i][idx] == kLogZero)
        throw InvariantViolation("current path has zero auxiliary weight");
    }
  }
}

std::vector<State> run_ffbs(std::span<const EpochStep> steps,
                            std::span<const std::uint8_t> locks,
                            const InitialDistribution& init,
                            const SweepTransitions& trans,
                            const FilterOptions& opts, RandomSource& rng) {
  const std::size_t m = steps.size();
  std::vector<State> out(m, State(steps[0].support.dim()));

  // Split at exact bridge locks; segments are conditionally independent.
  std::vector<std::size_t> bounds;
  bounds.push_back(0);
  for (std::size_t i = 1; i + 1 < m; ++i)
    if (!locks.empty() && locks[i]) bounds.push_back(i);
  bounds.push_back(m - 1);

  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    const std::size_t a = bounds[b];
    const std::size_t e = bounds[b + 1];
    std::span<const EpochStep> seg = steps.subspan(a, e - a + 1);
    InitialDistribution seg_init =
        (a == 0) ? init
                 : InitialDistribution::point(seg.front().support.state_at(0));
    FilterState fs = forward_filter(seg, seg_init, trans, opts);
    std::vector<State> states = backward_sample(fs, seg, trans, rng);
    if (a != 0 && !(states.front() == seg.front().support.state_at(0)))
      throw InvariantViolation("segment left its end-point lock");
    const std::size_t from = (a == 0) ? 0 : 1;
    for (std::size_t k = from; k < states.size(); ++k) out[a + k] = states[k];
    if (a != 0) out[a] = seg.front().support.state_at(0);
  }
  return out;
}

}  // namespace

void resample_trajectory(ChainState& chain, const GibbsModel& model,
                         const SamplerConfig& config, const SweepContext& ctx,
                         RandomSource& rng) {
  const RateKernel& kernel = model.kernel();
  const InitialDistribution init = model.initial_distribution();
  const ObservationSet* obs = model.observations();
  const State magnitudes = model.jump_magnitudes();

  const bool needs_omega =
      config.variant != SamplerVariant::NonstationaryReduced ||
      config.psi.kind() == PsiOperator::Kind::Complement;
  double omega = 0.0;
  if (needs_omega) {
    const double sup = model.sup_exit_bound();
    omega = sup == 0.0 ? 1.0 : std::max(config.omega_factor, 1.0 + 1e-6) * sup;
  }

  PsiOperator psi = config.psi;
  if (config.variant == SamplerVariant::VanillaUniformization)
    psi = PsiOperator::vanilla();

  SamplerConfig effective = config;
  effective.psi = psi;

  AugmentedTrajectory aug = sample_candidate_times(
      chain.traj, chain.jump_tags, kernel, psi, omega, rng);
  WeightingEvidence evidence =
      sample_compensation(aug, omega, psi, kernel, rng, config.variant);

  FilterOptions opts;
  opts.max_bytes = config.filter_max_bytes;
  SweepTransitions trans(kernel, psi, omega, obs);

  const bool has_constraints = config.normal_envelope.has_value() ||
                               config.gamma_envelope.has_value() ||
                               config.split.has_value();
  const int attempts = has_constraints ? config.envelope_retries : 1;

  std::vector<State> new_states;
  bool done = false;
  for (int attempt = 0; attempt < attempts && !done; ++attempt) {
    try {
      DrawnConstraints drawn = draw_sweep_constraints(
          aug, effective, ctx, kernel, init, magnitudes, rng);
      assert_compatible(aug, drawn.path);
      std::vector<EpochStep> steps =
          build_epoch_steps(aug, evidence, effective, omega, kernel, obs, init,
                            magnitudes, &drawn.path);
      new_states =
          run_ffbs(steps, drawn.path.bridge_lock, init, trans, opts, rng);
      if (config.lock_trace != nullptr) {
        config.lock_trace->clear();
        for (std::size_t i = 0; i < aug.times.size(); ++i)
          if (drawn.path.bridge_lock[i])
            config.lock_trace->push_back(
                {aug.times[i], drawn.path.supports[i].state_at(0)});
      }
      done = true;
    } catch (const InfeasibleFilter&) {
      if (attempt + 1 >= attempts) throw;
    }
  }

  // Rebuild the chain from the resampled states, dropping virtual epochs
  // and carrying observation tags along.
  Trajectory traj;
  std::vector<int> tags;
  traj.horizon = aug.horizon;
  traj.times.push_back(aug.times.front());
  traj.states.push_back(new_states.front());
  tags.push_back(-1);
  for (std::size_t i = 1; i < aug.times.size(); ++i) {
    const bool jump = !(new_states[i] == new_states[i - 1]);
    if (aug.obs_tag[i] >= 0 && !jump)
      throw InvariantViolation("observation epoch resampled as virtual");
    if (jump) {
      traj.times.push_back(aug.times[i]);
      traj.states.push_back(new_states[i]);
      tags.push_back(aug.obs_tag[i]);
    }
  }
  chain.traj = std::move(traj);
  chain.jump_tags = std::move(tags);
}

void gibbs_sweep(ChainState& chain, GibbsModel& model,
                 const SamplerConfig& config, const SweepContext& ctx,
                 RandomSource& rng) {
  resample_trajectory(chain, model, config, ctx, rng);
  model.update_params(chain.traj, rng);
  model.post_update(chain, rng);
  ++chain.sweep;
}

}  // namespace mjp
