#include "mjp/rate_kernel.hpp"

#include <cmath>
#include <numbers>

#include "mjp/errors.hpp"
#include "mjp/quadrature.hpp"

namespace mjp {

double Seasonality::value(double t) const {
  if (!enabled) return 1.0;
  return 1.5 + 0.5 * std::cos(2.0 * std::numbers::pi * t / period);
}

double Seasonality::integral(double a, double b) const {
  if (!enabled) return b - a;
  const double w = 2.0 * std::numbers::pi / period;
  auto anti = [&](double t) { return 1.5 * t + 0.5 * std::sin(w * t) / w; };
  return anti(b) - anti(a);
}

RateKernel::RateKernel(StateSpace space, std::vector<Reaction> reactions,
                       Seasonality seasonality)
    : space_(std::move(space)),
      reactions_(std::move(reactions)),
      seasonality_(seasonality) {
  for (const Reaction& rn : reactions_) {
    if (rn.delta.dim() != space_.dim())
      throw DomainError("RateKernel: reaction dimension mismatch");
    if (!(rn.rate >= 0.0) || !std::isfinite(rn.rate))
      throw DomainError("RateKernel: reaction rate must be finite >= 0");
    if (!rn.structural)
      throw DomainError("RateKernel: missing structural factor");
    if ((rn.seasonal && seasonality_.enabled) || rn.time_profile)
      homogeneous_ = false;
  }
}

std::vector<double> RateKernel::params() const {
  std::vector<double> out;
  out.reserve(reactions_.size());
  for (const Reaction& rn : reactions_) out.push_back(rn.rate);
  return out;
}

double RateKernel::structural_factor(std::size_t k, const State& x) const {
  const Reaction& rn = reactions_[k];
  const double h = rn.structural(x);
  if (h <= 0.0) return 0.0;
  if (!space_.contains(x.plus(rn.delta))) return 0.0;
  return h;
}

double RateKernel::time_factor(std::size_t k, double t) const {
  const Reaction& rn = reactions_[k];
  if (rn.time_profile) return rn.time_profile(t);
  return rn.seasonal ? seasonality_.value(t) : 1.0;
}

double RateKernel::time_factor_integral(std::size_t k, double a,
                                        double b) const {
  const Reaction& rn = reactions_[k];
  if (rn.time_profile) return integrate_simpson(rn.time_profile, a, b, 1e-9);
  return rn.seasonal ? seasonality_.integral(a, b) : (b - a);
}

double RateKernel::reaction_rate(std::size_t k, const State& x,
                                 double t) const {
  const double h = structural_factor(k, x);
  if (h <= 0.0) return 0.0;
  return reactions_[k].rate * h * time_factor(k, t);
}

double RateKernel::off_rate(const State& x, const State& y, double t) const {
  double total = 0.0;
  for (std::size_t k = 0; k < reactions_.size(); ++k) {
    if (x.plus(reactions_[k].delta) == y) total += reaction_rate(k, x, t);
  }
  return total;
}

double RateKernel::exit_rate(const State& x, double t) const {
  double total = 0.0;
  for (std::size_t k = 0; k < reactions_.size(); ++k)
    total += reaction_rate(k, x, t);
  return total;
}

double RateKernel::exit_integral(const State& x, double a, double b) const {
  if (b < a) throw DomainError("exit_integral: b < a");
  double total = 0.0;
  for (std::size_t k = 0; k < reactions_.size(); ++k) {
    const double h = structural_factor(k, x);
    if (h <= 0.0) continue;
    total += reactions_[k].rate * h * time_factor_integral(k, a, b);
  }
  return total;
}

RateKernel::ExitSplit RateKernel::exit_split(const State& x) const {
  ExitSplit split;
  for (std::size_t k = 0; k < reactions_.size(); ++k) {
    const double h = structural_factor(k, x);
    if (h <= 0.0) continue;
    const Reaction& rn = reactions_[k];
    if (rn.time_profile)
      throw UnsupportedError("exit_split: custom time profile");
    const double contribution = rn.rate * h;
    if (rn.seasonal && seasonality_.enabled)
      split.seasonal += contribution;
    else
      split.fixed += contribution;
  }
  return split;
}

double RateKernel::exit_rate_max(const State& x) const {
  const ExitSplit s = exit_split(x);
  return s.fixed + s.seasonal * seasonality_.max_value();
}

double RateKernel::exit_rate_min(const State& x) const {
  const ExitSplit s = exit_split(x);
  return s.fixed + s.seasonal * seasonality_.min_value();
}

double RateKernel::max_exit_bound() const {
  const std::size_t n = space_.volume();  // throws on unbounded spaces
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    best = std::max(best, exit_rate_max(space_.decode(i)));
  return best;
}

}  // namespace mjp
