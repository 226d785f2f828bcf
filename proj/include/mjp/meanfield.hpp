#ifndef MJP_MEANFIELD_HPP
#define MJP_MEANFIELD_HPP

#include <functional>
#include <span>
#include <vector>

namespace mjp {

// Deterministic reference dynamics on a uniform grid with linear
// interpolation between grid points.
class MeanPath {
 public:
  MeanPath() = default;
  MeanPath(std::vector<double> grid, std::vector<std::vector<double>> columns);

  int dim() const { return static_cast<int>(columns_.size()); }
  double horizon() const { return grid_.empty() ? 0.0 : grid_.back(); }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& column(int coord) const { return columns_[coord]; }

  double value(int coord, double t) const;

 private:
  std::vector<double> grid_;
  std::vector<std::vector<double>> columns_;
};

// Autonomous-in-form ODE dxi/dt = f(t, xi; params).
struct OdeSystem {
  int dim = 1;
  std::function<void(double t, std::span<const double> y,
                     std::span<const double> params, std::span<double> dy)>
      rhs;
  std::vector<double> y0;
};

// Classical fixed-step fourth-order integration over [0, T].
MeanPath integrate(const OdeSystem& system, std::span<const double> params,
                   double T, double step);

// Calibration targets: observation r constrains ODE coordinate
// coords[j] to be near values[r][j] at times[r].
struct CalibrationData {
  std::vector<double> times;
  std::vector<std::vector<double>> values;
  std::vector<int> coords;
};

struct CalibrationResult {
  std::vector<double> params;
  double objective = 0.0;
  bool degenerate = false;  // flat objective; midpoint returned
};

// Least-squares fit of the free parameters by a coarse grid (32 points per
// dimension) followed by coordinate golden-section refinement to relative
// 1e-4. Derivative free; intended for the 1-2 parameter fits used here.
CalibrationResult calibrate(const OdeSystem& system, const CalibrationData& data,
                            std::span<const std::pair<double, double>> bounds,
                            double T, double step);

}  // namespace mjp

#endif
