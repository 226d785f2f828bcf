#include "mjp/models/sir.hpp"

#include <algorithm>
#include <cmath>

#include "mjp/errors.hpp"
#include "mjp/ffbs.hpp"

namespace mjp {

SIRModel::SIRModel(SIRConfig config, std::vector<double> removal_times,
                   double horizon_abs)
    : config_(config),
      removal_times_(std::move(removal_times)),
      horizon_abs_(horizon_abs),
      kernel_(build_kernel()) {
  if (removal_times_.empty())
    throw DomainError("SIR: at least one removal observation required");
  if (!std::is_sorted(removal_times_.begin(), removal_times_.end()))
    throw DomainError("SIR: removal times must be sorted");
  if (static_cast<int>(removal_times_.size()) > config_.population)
    throw DomainError("SIR: more removals than individuals");
  if (removal_times_.back() > horizon_abs_)
    throw DomainError("SIR: removal beyond the observation horizon");

  // Initial guess for the unknown start of the epidemic, strictly before
  // the first removal.
  t0_abs_ = removal_times_.front() -
            std::max(0.5 * std::fabs(removal_times_.front()), 0.25);

  obs_.kind = ObservationSet::Kind::JumpTimes;
  obs_.detect_prob = {0.0, 1.0};  // infections latent, removals observed
  for (double r : removal_times_) obs_.times.push_back(r - t0_abs_);
}

RateKernel SIRModel::build_kernel() const {
  const Coord n = static_cast<Coord>(config_.population);
  StateSpace space(State{0, 0}, State{n, n});
  std::vector<Reaction> rx;
  rx.push_back({"infection", State{-1, 1}, config_.beta,
                StructuralFactor::product(0, 1).with_sum_cap(n), false, {}});
  rx.push_back({"removal", State{0, -1}, config_.gamma,
                StructuralFactor::coord(1).with_sum_cap(n), false, {}});
  return RateKernel(space, std::move(rx), Seasonality::none());
}

InitialDistribution SIRModel::initial_distribution() const {
  return InitialDistribution::point(
      State{static_cast<Coord>(config_.population - 1), 1});
}

std::vector<std::string> SIRModel::param_names() const {
  return {"beta", "gamma", "t0"};
}

std::vector<double> SIRModel::params() const {
  return {config_.beta, config_.gamma, t0_abs_};
}

SIRModel::Conditionals SIRModel::rate_conditionals(
    const Trajectory& traj) const {
  const SufficientStats stats = complete_data_stats(traj, kernel_);
  return {config_.beta_prior.shape + static_cast<double>(stats.jump_counts[0]),
          config_.beta_prior.rate + stats.exposures[0],
          config_.gamma_prior.shape +
              static_cast<double>(stats.jump_counts[1]),
          config_.gamma_prior.rate + stats.exposures[1]};
}

void SIRModel::update_params(const Trajectory& traj, RandomSource& rng) {
  const Conditionals cond = rate_conditionals(traj);
  config_.beta = rng.gamma(cond.beta_shape, cond.beta_rate);
  config_.gamma = rng.gamma(cond.gamma_shape, cond.gamma_rate);
  kernel_ = build_kernel();
}

double SIRModel::draw_start_gap(double rate, double window,
                                RandomSource& rng) {
  if (!(window > 0.0)) throw DomainError("start gap: window must be positive");
  const double u = rng.uniform01();
  if (rate <= 1e-14) return u * window;
  // F(g) = (1 - e^{-rate g}) / (1 - e^{-rate W}) inverted at u.
  const double tail = -std::expm1(-rate * window);
  return -std::log1p(-u * tail) / rate;
}

void SIRModel::rebase_clock(double new_t0) {
  const double shift = t0_abs_ - new_t0;
  t0_abs_ = new_t0;
  for (std::size_t r = 0; r < obs_.times.size(); ++r)
    obs_.times[r] = removal_times_[r] - t0_abs_;
  (void)shift;
}

void SIRModel::post_update(ChainState& chain, RandomSource& rng) {
  if (chain.traj.times.size() < 2) return;
  const double rate =
      config_.beta * static_cast<double>(config_.population - 1) +
      config_.gamma;
  const double window =
      config_.t0_window > 0.0 ? config_.t0_window : horizon_abs_;
  const double gap = draw_start_gap(rate, window, rng);
  const double shift = gap - chain.traj.times[1];
  for (std::size_t i = 1; i < chain.traj.times.size(); ++i)
    chain.traj.times[i] += shift;
  chain.traj.horizon += shift;
  rebase_clock(t0_abs_ - shift);
}

void SIRModel::init_chain(ChainState& chain, RandomSource& rng) {
  (void)rng;
  const std::size_t k = removal_times_.size();
  const Coord n = static_cast<Coord>(config_.population);

  Trajectory traj;
  traj.horizon = horizon_abs_ - t0_abs_;
  std::vector<int> tags;
  traj.times.push_back(0.0);
  traj.states.push_back(State{n - 1, 1});
  tags.push_back(-1);

  // One latent infection midway before each removal except the last keeps
  // the infective count at one throughout, which has positive density.
  double prev = 0.0;
  State x{n - 1, 1};
  for (std::size_t j = 0; j < k; ++j) {
    const double removal = removal_times_[j] - t0_abs_;
    if (j + 1 < k) {
      const double infection = 0.5 * (prev + removal);
      x = State{static_cast<Coord>(x[0] - 1), static_cast<Coord>(x[1] + 1)};
      traj.times.push_back(infection);
      traj.states.push_back(x);
      tags.push_back(-1);
    }
    x = State{x[0], static_cast<Coord>(x[1] - 1)};
    traj.times.push_back(removal);
    traj.states.push_back(x);
    tags.push_back(static_cast<int>(j));
    prev = removal;
  }
  traj.validate();
  chain.traj = std::move(traj);
  chain.jump_tags = std::move(tags);
  chain.sweep = 0;
}

OdeSystem SIRModel::mean_system() const {
  OdeSystem system;
  system.dim = 3;
  system.y0 = {static_cast<double>(config_.population - 1), 1.0, 0.0};
  system.rhs = [](double, std::span<const double> y,
                  std::span<const double> params, std::span<double> dy) {
    const double infection = params[0] * y[0] * y[1];
    const double removal = params[1] * y[1];
    dy[0] = -infection;
    dy[1] = infection - removal;
    dy[2] = removal;
  };
  return system;
}

// ---------------------------------------------------------------------------
// Metropolis-Hastings baseline

SIRMetropolisBaseline::SIRMetropolisBaseline(SIRConfig config,
                                             std::vector<double> removal_times,
                                             double horizon_abs)
    : config_(config),
      removals_(std::move(removal_times)),
      horizon_abs_(horizon_abs) {
  if (removals_.empty()) throw DomainError("SIR baseline: no removals");
}

void SIRMetropolisBaseline::init(RandomSource& rng) {
  (void)rng;
  infections_.clear();
  const double t0 =
      removals_.front() - std::max(0.5 * std::fabs(removals_.front()), 0.25);
  infections_.push_back(t0);
  double prev = t0;
  for (std::size_t j = 0; j + 1 < removals_.size(); ++j) {
    infections_.push_back(0.5 * (prev + removals_[j]));
    prev = removals_[j];
  }
  std::sort(infections_.begin(), infections_.end());
}

double SIRMetropolisBaseline::log_likelihood(
    const std::vector<double>& infections) const {
  const double n = static_cast<double>(config_.population);
  if (infections.empty()) return kLogZero;
  if (static_cast<double>(infections.size()) > n) return kLogZero;
  const double t0 = infections.front();
  if (t0 >= removals_.front()) return kLogZero;

  // Merge events; infections after the first carry a beta s i factor,
  // removals a gamma i factor.
  std::size_t ii = 1, ri = 0;
  double s = n - 1, i = 1;
  double t = t0;
  double log_lik = 0.0;
  const double beta = config_.beta, gamma = config_.gamma;
  while (ii < infections.size() || ri < removals_.size()) {
    const double t_inf =
        ii < infections.size() ? infections[ii] : horizon_abs_ + 1.0;
    const double t_rem = ri < removals_.size() ? removals_[ri] : horizon_abs_ + 1.0;
    const double t_next = std::min(t_inf, t_rem);
    if (t_next > horizon_abs_) return kLogZero;  // event past the window
    log_lik -= (beta * s * i + gamma * i) * (t_next - t);
    if (t_inf <= t_rem) {
      if (s < 1.0 || i < 1.0) return kLogZero;
      log_lik += std::log(beta * s * i);
      s -= 1.0;
      i += 1.0;
      ++ii;
    } else {
      if (i < 1.0) return kLogZero;
      log_lik += std::log(gamma * i);
      i -= 1.0;
      ++ri;
    }
    t = t_next;
  }
  log_lik -= (beta * s * i + gamma * i) * (horizon_abs_ - t);
  return log_lik;
}

void SIRMetropolisBaseline::sweep(RandomSource& rng) {
  const double t0 = infections_.front();
  double log_lik = log_likelihood(infections_);

  const std::size_t n_add = infections_.size() - 1;
  const std::size_t n_prop = std::max<std::size_t>(1, (n_add + 1) / 2);
  for (std::size_t p = 0; p < n_prop; ++p) {
    const std::uint64_t kind = rng.uniform_int(3);
    std::vector<double> proposal = infections_;
    double log_ratio = 0.0;  // proposal density ratio
    const double span = horizon_abs_ - t0;
    const std::size_t cur_add = proposal.size() - 1;
    if (kind == 0) {
      // add
      proposal.push_back(rng.uniform(t0, horizon_abs_));
      std::sort(proposal.begin(), proposal.end());
      log_ratio = std::log(span) - std::log(static_cast<double>(cur_add + 1));
    } else if (kind == 1) {
      // delete
      if (cur_add == 0) continue;
      const std::size_t pick = 1 + rng.uniform_int(cur_add);
      proposal.erase(proposal.begin() + static_cast<long>(pick));
      log_ratio = std::log(static_cast<double>(cur_add)) - std::log(span);
    } else {
      // move
      if (cur_add == 0) continue;
      const std::size_t pick = 1 + rng.uniform_int(cur_add);
      proposal[pick] = rng.uniform(t0, horizon_abs_);
      std::sort(proposal.begin(), proposal.end());
    }
    ++proposals_;
    const double log_lik_new = log_likelihood(proposal);
    if (std::log(rng.uniform01()) < log_lik_new - log_lik + log_ratio) {
      infections_ = std::move(proposal);
      log_lik = log_lik_new;
      ++accepts_;
    }
  }

  // Conjugate rate draws from the complete data.
  {
    const double n = static_cast<double>(config_.population);
    double s = n - 1, i = 1;
    double t = infections_.front();
    double exp_si = 0.0, exp_i = 0.0;
    std::size_t ii = 1, ri = 0;
    while (ii < infections_.size() || ri < removals_.size()) {
      const double t_inf =
          ii < infections_.size() ? infections_[ii] : horizon_abs_ + 1.0;
      const double t_rem =
          ri < removals_.size() ? removals_[ri] : horizon_abs_ + 1.0;
      const double t_next = std::min(t_inf, t_rem);
      exp_si += s * i * (t_next - t);
      exp_i += i * (t_next - t);
      if (t_inf <= t_rem) {
        s -= 1.0;
        i += 1.0;
        ++ii;
      } else {
        i -= 1.0;
        ++ri;
      }
      t = t_next;
    }
    exp_si += s * i * (horizon_abs_ - t);
    exp_i += i * (horizon_abs_ - t);
    config_.beta = rng.gamma(
        config_.beta_prior.shape + static_cast<double>(infections_.size() - 1),
        config_.beta_prior.rate + exp_si);
    config_.gamma = rng.gamma(
        config_.gamma_prior.shape + static_cast<double>(removals_.size()),
        config_.gamma_prior.rate + exp_i);
  }

  // Start-time move through the truncated-exponential conditional.
  {
    double first_event = horizon_abs_;
    if (infections_.size() > 1) first_event = infections_[1];
    first_event = std::min(first_event, removals_.front());
    const double rate =
        config_.beta * static_cast<double>(config_.population - 1) +
        config_.gamma;
    const double window =
        config_.t0_window > 0.0 ? config_.t0_window : horizon_abs_;
    const double gap = SIRModel::draw_start_gap(rate, window, rng);
    infections_.front() = first_event - gap;
  }
}

}  // namespace mjp
