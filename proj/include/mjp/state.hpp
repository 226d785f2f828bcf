#ifndef MJP_STATE_HPP
#define MJP_STATE_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "mjp/errors.hpp"

namespace mjp {

using Coord = std::int32_t;

// Population state: small fixed-capacity integer vector. The shipped models
// are one- or two-dimensional but anything up to kMaxDim works.
class State {
 public:
  static constexpr int kMaxDim = 4;

  State() = default;
  explicit State(int dim) : dim_(static_cast<std::uint8_t>(dim)) {
    if (dim < 1 || dim > kMaxDim) throw DomainError("State: bad dimension");
  }
  State(std::initializer_list<Coord> coords) {
    if (coords.size() < 1 || coords.size() > kMaxDim)
      throw DomainError("State: bad dimension");
    dim_ = static_cast<std::uint8_t>(coords.size());
    int i = 0;
    for (Coord v : coords) c_[i++] = v;
  }

  int dim() const { return dim_; }
  Coord operator[](int i) const { return c_[i]; }
  Coord& operator[](int i) { return c_[i]; }

  friend bool operator==(const State& a, const State& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }
  friend bool operator!=(const State& a, const State& b) { return !(a == b); }

  State plus(const State& delta) const {
    State out = *this;
    for (int i = 0; i < dim_; ++i) out.c_[i] += delta.c_[i];
    return out;
  }
  State minus(const State& delta) const {
    State out = *this;
    for (int i = 0; i < dim_; ++i) out.c_[i] -= delta.c_[i];
    return out;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dim_; ++i)
      s += (i ? "," : "") + std::to_string(c_[i]);
    return s + ")";
  }

 private:
  std::array<Coord, kMaxDim> c_{};
  std::uint8_t dim_ = 1;
};

// Countable box-shaped state space with optional per-coordinate upper
// bounds. Bounded spaces admit a dense row-major encoding used by the
// transition-probability oracle and small exact computations.
class StateSpace {
 public:
  static constexpr Coord kUnbounded = std::numeric_limits<Coord>::max();

  StateSpace(State lower, State upper) : lower_(lower), upper_(upper) {
    if (lower.dim() != upper.dim())
      throw DomainError("StateSpace: dimension mismatch");
    for (int i = 0; i < lower.dim(); ++i)
      if (upper[i] != kUnbounded && upper[i] < lower[i])
        throw DomainError("StateSpace: empty range");
  }

  int dim() const { return lower_.dim(); }
  const State& lower() const { return lower_; }
  const State& upper() const { return upper_; }

  bool bounded() const {
    for (int i = 0; i < dim(); ++i)
      if (upper_[i] == kUnbounded) return false;
    return true;
  }

  bool contains(const State& x) const {
    if (x.dim() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
      if (x[i] < lower_[i]) return false;
      if (upper_[i] != kUnbounded && x[i] > upper_[i]) return false;
    }
    return true;
  }

  // Dense index of a state in a bounded space; encode/decode are mutual
  // inverses over [0, volume).
  std::size_t volume() const {
    require_bounded();
    std::size_t v = 1;
    for (int i = 0; i < dim(); ++i)
      v *= static_cast<std::size_t>(upper_[i] - lower_[i] + 1);
    return v;
  }
  std::size_t encode(const State& x) const {
    require_bounded();
    if (!contains(x)) throw DomainError("encode: state outside space");
    std::size_t idx = 0;
    for (int i = 0; i < dim(); ++i) {
      idx *= static_cast<std::size_t>(upper_[i] - lower_[i] + 1);
      idx += static_cast<std::size_t>(x[i] - lower_[i]);
    }
    return idx;
  }
  State decode(std::size_t idx) const {
    require_bounded();
    State x(dim());
    for (int i = dim() - 1; i >= 0; --i) {
      const std::size_t width =
          static_cast<std::size_t>(upper_[i] - lower_[i] + 1);
      x[i] = lower_[i] + static_cast<Coord>(idx % width);
      idx /= width;
    }
    if (idx != 0) throw DomainError("decode: index outside space");
    return x;
  }

 private:
  void require_bounded() const {
    if (!bounded())
      throw UnsupportedError("operation requires a bounded state space");
  }
  State lower_, upper_;
};

// Contiguous per-coordinate integer box; the restricted supports handed to
// the filtering engine are always of this shape, which keeps membership and
// dense enumeration O(1).
class SupportBox {
 public:
  SupportBox() = default;
  SupportBox(State lo, State hi) : lo_(lo), hi_(hi) {
    if (lo.dim() != hi.dim()) throw DomainError("SupportBox: dim mismatch");
    for (int i = 0; i < lo.dim(); ++i)
      if (hi[i] < lo[i]) throw DomainError("SupportBox: empty box");
  }
  static SupportBox singleton(const State& x) { return SupportBox(x, x); }

  int dim() const { return lo_.dim(); }
  const State& lo() const { return lo_; }
  const State& hi() const { return hi_; }

  bool contains(const State& x) const {
    for (int i = 0; i < dim(); ++i)
      if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
    return true;
  }

  std::size_t volume() const {
    std::size_t v = 1;
    for (int i = 0; i < dim(); ++i)
      v *= static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
    return v;
  }

  std::size_t index_of(const State& x) const {
    std::size_t idx = 0;
    for (int i = 0; i < dim(); ++i) {
      idx *= static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
      idx += static_cast<std::size_t>(x[i] - lo_[i]);
    }
    return idx;
  }

  State state_at(std::size_t idx) const {
    State x(dim());
    for (int i = dim() - 1; i >= 0; --i) {
      const std::size_t width = static_cast<std::size_t>(hi_[i] - lo_[i] + 1);
      x[i] = lo_[i] + static_cast<Coord>(idx % width);
      idx /= width;
    }
    return x;
  }

  // Grow by `magnitudes` per coordinate, clipped to the space bounds.
  SupportBox expanded(const State& magnitudes, const StateSpace& space) const {
    State lo = lo_, hi = hi_;
    for (int i = 0; i < dim(); ++i) {
      lo[i] = std::max(lo[i] - magnitudes[i], space.lower()[i]);
      if (space.upper()[i] == StateSpace::kUnbounded)
        hi[i] = hi[i] + magnitudes[i];
      else
        hi[i] = std::min(hi[i] + magnitudes[i], space.upper()[i]);
    }
    return SupportBox(lo, hi);
  }

  // Intersection; throws DomainError if empty (callers treat that as an
  // infeasible constraint and redraw).
  SupportBox intersect(const SupportBox& other) const {
    State lo = lo_, hi = hi_;
    for (int i = 0; i < dim(); ++i) {
      lo[i] = std::max(lo[i], other.lo_[i]);
      hi[i] = std::min(hi[i], other.hi_[i]);
      if (hi[i] < lo[i]) throw DomainError("SupportBox: empty intersection");
    }
    return SupportBox(lo, hi);
  }

  friend bool operator==(const SupportBox& a, const SupportBox& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  State lo_{1}, hi_{1};
};

}  // namespace mjp

#endif
