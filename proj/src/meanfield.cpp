#include "mjp/meanfield.hpp"

#include <algorithm>
#include <cmath>

#include "mjp/errors.hpp"

namespace mjp {

MeanPath::MeanPath(std::vector<double> grid,
                   std::vector<std::vector<double>> columns)
    : grid_(std::move(grid)), columns_(std::move(columns)) {
  for (const auto& col : columns_)
    if (col.size() != grid_.size())
      throw DomainError("MeanPath: column/grid size mismatch");
  for (double v : grid_)
    if (!std::isfinite(v)) throw DomainError("MeanPath: non-finite grid");
}

double MeanPath::value(int coord, double t) const {
  const std::vector<double>& col = columns_[coord];
  if (grid_.size() == 1) return col[0];
  if (t <= grid_.front()) return col.front();
  if (t >= grid_.back()) return col.back();
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return col[lo] * (1.0 - w) + col[hi] * w;
}

MeanPath integrate(const OdeSystem& system, std::span<const double> params,
                   double T, double step) {
  if (!(step > 0.0)) throw DomainError("integrate: step must be positive");
  const int d = system.dim;
  const std::size_t n_steps =
      static_cast<std::size_t>(std::ceil(T / step - 1e-12));
  const double h = T / static_cast<double>(std::max<std::size_t>(n_steps, 1));

  std::vector<double> grid;
  std::vector<std::vector<double>> cols(d);
  std::vector<double> y = system.y0;
  std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);

  auto record = [&](double t) {
    grid.push_back(t);
    for (int c = 0; c < d; ++c) {
      if (!std::isfinite(y[c]))
        throw Error("integrate: non-finite state at t = " + std::to_string(t));
      cols[c].push_back(y[c]);
    }
  };

  record(0.0);
  double t = 0.0;
  for (std::size_t i = 0; i < n_steps; ++i) {
    system.rhs(t, y, params, k1);
    for (int c = 0; c < d; ++c) tmp[c] = y[c] + 0.5 * h * k1[c];
    system.rhs(t + 0.5 * h, tmp, params, k2);
    for (int c = 0; c < d; ++c) tmp[c] = y[c] + 0.5 * h * k2[c];
    system.rhs(t + 0.5 * h, tmp, params, k3);
    for (int c = 0; c < d; ++c) tmp[c] = y[c] + h * k3[c];
    system.rhs(t + h, tmp, params, k4);
    for (int c = 0; c < d; ++c)
      y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    t += h;
    record(t);
  }
  return MeanPath(std::move(grid), std::move(cols));
}

namespace {

double objective(const OdeSystem& system, const CalibrationData& data,
                 std::span<const double> params, double T, double step) {
  const MeanPath path = integrate(system, params, T, step);
  double sum = 0.0;
  for (std::size_t r = 0; r < data.times.size(); ++r) {
    for (std::size_t j = 0; j < data.coords.size(); ++j) {
      const double diff =
          path.value(data.coords[j], data.times[r]) - data.values[r][j];
      sum += diff * diff;
    }
  }
  return sum;
}

// Golden-section line search on coordinate dim over [lo, hi].
double golden_refine(const std::function<double(double)>& f, double lo,
                     double hi, double rel_tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  const double scale = std::max(std::fabs(lo), std::fabs(hi)) + 1e-12;
  while ((b - a) > rel_tol * scale) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

CalibrationResult calibrate(const OdeSystem& system,
                            const CalibrationData& data,
                            std::span<const std::pair<double, double>> bounds,
                            double T, double step) {
  if (data.times.empty()) throw DomainError("calibrate: no observations");
  const int p = static_cast<int>(bounds.size());
  constexpr int kGrid = 32;

  // Coarse scan, one coordinate at a time starting from midpoints.
  std::vector<double> params(p);
  for (int i = 0; i < p; ++i)
    params[i] = 0.5 * (bounds[i].first + bounds[i].second);
  double best = objective(system, data, params, T, step);
  const double initial = best;
  bool moved = false;

  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < p; ++i) {
      double best_coord = params[i];
      for (int g = 0; g < kGrid; ++g) {
        const double v = bounds[i].first + (bounds[i].second - bounds[i].first) *
                                               (g + 0.5) / kGrid;
        params[i] = v;
        const double val = objective(system, data, params, T, step);
        if (val < best - 1e-15) {
          best = val;
          best_coord = v;
          moved = true;
        }
      }
      params[i] = best_coord;
    }
  }

  if (!moved && p > 0) {
    // First grid pass never improved on the midpoint: flat objective.
    bool flat = std::fabs(initial - best) <= 1e-12 * (1.0 + initial);
    if (flat) {
      CalibrationResult res;
      res.params = params;
      res.objective = best;
      res.degenerate = true;
      return res;
    }
  }

  // Coordinate golden-section refinement around the grid winner.
  for (int pass = 0; pass < 3; ++pass) {
    for (int i = 0; i < p; ++i) {
      const double width = (bounds[i].second - bounds[i].first) / kGrid;
      const double lo = std::max(bounds[i].first, params[i] - width);
      const double hi = std::min(bounds[i].second, params[i] + width);
      params[i] = golden_refine(
          [&](double v) {
            std::vector<double> trial = params;
            trial[i] = v;
            return objective(system, data, trial, T, step);
          },
          lo, hi, 1e-4);
    }
  }

  CalibrationResult res;
  res.params = params;
  res.objective = objective(system, data, params, T, step);
  return res;
}

}  // namespace mjp
