#ifndef MJP_RATE_KERNEL_HPP
#define MJP_RATE_KERNEL_HPP

#include <functional>
#include <type_traits>
#include <string>
#include <vector>

#include "mjp/state.hpp"

namespace mjp {

// Periodic modulation r(t) = 3/2 + cos(2*pi*t/period)/2, bounded in [1,2],
// with a closed-form antiderivative so holding-interval integrals in the
// inner sampling loops stay exact.
struct Seasonality {
  bool enabled = false;
  double period = 1.0;

  double value(double t) const;
  // Integral of r over [a,b].
  double integral(double a, double b) const;
  double min_value() const { return enabled ? 1.0 : 1.0; }
  double max_value() const { return enabled ? 2.0 : 1.0; }

  static Seasonality none() { return {}; }
  static Seasonality cosine(double period) { return {true, period}; }
};

// Structural part h(x) of a jump intensity. Population kinetics only ever
// need a constant, one coordinate, or a pairwise product, so those forms
// are evaluated branch-only; anything else drops to a callback.
class StructuralFactor {
 public:
  StructuralFactor() = default;
  template <class Fn,
            class = std::enable_if_t<
                std::is_invocable_r_v<double, Fn, const State&> &&
                !std::is_same_v<std::decay_t<Fn>, StructuralFactor>>>
  StructuralFactor(Fn fn) : kind_(Kind::Custom), custom_(std::move(fn)) {}

  static StructuralFactor one() { return StructuralFactor(); }
  static StructuralFactor coord(int c) {
    StructuralFactor f;
    f.kind_ = Kind::Coord;
    f.c1_ = c;
    return f;
  }
  static StructuralFactor product(int c1, int c2) {
    StructuralFactor f;
    f.kind_ = Kind::Product;
    f.c1_ = c1;
    f.c2_ = c2;
    return f;
  }

  // Zero the factor whenever the coordinate sum exceeds cap. Conserved-sum
  // models (epidemics) use this so that rates vanish on the unreachable
  // corner of the bounding box and rate bounds stay honest.
  StructuralFactor with_sum_cap(Coord cap) const {
    StructuralFactor f = *this;
    f.sum_cap_ = cap;
    return f;
  }

  double operator()(const State& x) const {
    if (sum_cap_ >= 0) {
      Coord sum = 0;
      for (int c = 0; c < x.dim(); ++c) sum += x[c];
      if (sum > sum_cap_) return 0.0;
    }
    switch (kind_) {
      case Kind::One:
        return 1.0;
      case Kind::Coord:
        return static_cast<double>(x[c1_]);
      case Kind::Product:
        return static_cast<double>(x[c1_]) * static_cast<double>(x[c2_]);
      case Kind::Custom:
        return custom_(x);
    }
    return 0.0;
  }

  explicit operator bool() const {
    return kind_ != Kind::Custom || static_cast<bool>(custom_);
  }

 private:
  enum class Kind { One, Coord, Product, Custom };
  Kind kind_ = Kind::One;
  int c1_ = 0, c2_ = 1;
  Coord sum_cap_ = -1;
  std::function<double(const State&)> custom_;
};

// One jump channel: a fixed displacement with intensity
//   rate * structural(x) * r(t)   (seasonal) or
//   rate * structural(x)          (constant in time) or
//   rate * structural(x) * time_profile(t) (custom, integrated numerically).
// structural(x) must already vanish where the jump is structurally
// impossible; the kernel additionally zeroes jumps that would leave the
// state space.
struct Reaction {
  std::string name;
  State delta;
  double rate = 0.0;
  StructuralFactor structural;
  bool seasonal = false;
  std::function<double(double)> time_profile;  // optional, overrides seasonal
};

// Sparse time-dependent intensity matrix Q(t) in reaction form. Only the
// nonnegative total exit rate |Q_x(t)| is ever exposed; formulas written
// against the signed diagonal use -exit_rate instead.
class RateKernel {
 public:
  RateKernel(StateSpace space, std::vector<Reaction> reactions,
             Seasonality seasonality);

  const StateSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const Seasonality& seasonality() const { return seasonality_; }
  bool time_homogeneous() const { return homogeneous_; }

  // Rate vector (one entry per reaction, in declaration order).
  std::vector<double> params() const;

  // Active jump rate of reaction k out of x at time t (0 if the jump leaves
  // the space or is structurally off).
  double reaction_rate(std::size_t k, const State& x, double t) const;

  // Neighbours are destination states reachable through some reaction with
  // positive structural factor. Enumeration visits (index of reaction,
  // destination); rates may still be time dependent.
  template <class Visitor>
  void for_each_neighbor(const State& x, Visitor&& visit) const {
    for (std::size_t k = 0; k < reactions_.size(); ++k) {
      const Reaction& rn = reactions_[k];
      if (structural_factor(k, x) <= 0.0) continue;
      visit(k, x.plus(rn.delta));
    }
  }

  double off_rate(const State& x, const State& y, double t) const;
  double exit_rate(const State& x, double t) const;

  // Exact integral of exit_rate(x, .) over [a,b]; closed form through the
  // seasonal antiderivative, adaptive Simpson for custom time profiles.
  double exit_integral(const State& x, double a, double b) const;

  // Bounds over time, used for thinning and dominating rates.
  double exit_rate_max(const State& x) const;
  double exit_rate_min(const State& x) const;

  // Decomposition exit_rate(x,t) = fixed + seasonal * r(t); callers that
  // sweep many states per epoch cache these two numbers.
  struct ExitSplit {
    double fixed = 0.0;     // sum of non-seasonal active rates
    double seasonal = 0.0;  // coefficient of r(t)
  };
  ExitSplit exit_split(const State& x) const;

  // Largest exit-rate bound over a bounded space (dominating-rate setup).
  double max_exit_bound() const;

  // Structural factor of reaction k at x, zeroed when x + delta leaves the
  // space.
  double structural_factor(std::size_t k, const State& x) const;

  // Integral over [a,b] of reaction k's time factor (1, r(t), or profile).
  double time_factor_integral(std::size_t k, double a, double b) const;
  double time_factor(std::size_t k, double t) const;

 private:
  StateSpace space_;
  std::vector<Reaction> reactions_;
  Seasonality seasonality_;
  bool homogeneous_ = true;
};

}  // namespace mjp

#endif
