#include <doctest.h>

#include <cmath>

#include "mjp/meanfield.hpp"

using namespace mjp;

TEST_SUITE("meanfield") {

TEST_CASE("exponential decay integrates to the analytic solution") {
  OdeSystem system;
  system.dim = 1;
  system.y0 = {1.0};
  system.rhs = [](double, std::span<const double> y,
                  std::span<const double> params, std::span<double> dy) {
    dy[0] = -params[0] * y[0];
  };
  const std::vector<double> params = {0.1};
  MeanPath path = integrate(system, params, 10.0, 0.01);
  CHECK(std::fabs(path.value(0, 10.0) - std::exp(-1.0)) < 1e-6);
}

TEST_CASE("zero right-hand side keeps the path constant") {
  OdeSystem system;
  system.dim = 2;
  system.y0 = {3.0, -1.0};
  system.rhs = [](double, std::span<const double>, std::span<const double>,
                  std::span<double> dy) { dy[0] = dy[1] = 0.0; };
  MeanPath path = integrate(system, {}, 5.0, 0.1);
  CHECK(path.value(0, 2.7) == 3.0);
  CHECK(path.value(1, 4.9) == -1.0);
}

TEST_CASE("sir flow conserves the population") {
  OdeSystem system;
  system.dim = 3;
  system.y0 = {49.0, 1.0, 0.0};
  system.rhs = [](double, std::span<const double> y,
                  std::span<const double> p, std::span<double> dy) {
    const double inf = p[0] * y[0] * y[1];
    const double rem = p[1] * y[1];
    dy[0] = -inf;
    dy[1] = inf - rem;
    dy[2] = rem;
  };
  const std::vector<double> params = {0.04, 1.0};
  MeanPath path = integrate(system, params, 10.0, 0.001);
  for (double t : {0.0, 2.5, 7.0, 10.0}) {
    const double total =
        path.value(0, t) + path.value(1, t) + path.value(2, t);
    CHECK(std::fabs(total - 50.0) < 1e-8);
  }
}

TEST_CASE("grid refinement is converged at the default step") {
  OdeSystem system;
  system.dim = 1;
  system.y0 = {1.0};
  system.rhs = [](double t, std::span<const double> y,
                  std::span<const double>, std::span<double> dy) {
    dy[0] = std::sin(t) - 0.3 * y[0];
  };
  const double T = 10.0;
  MeanPath coarse = integrate(system, {}, T, T / 1e4);
  MeanPath fine = integrate(system, {}, T, T / 2e4);
  CHECK(std::fabs(coarse.value(0, T) - fine.value(0, T)) < 1e-6);
}

TEST_CASE("calibration recovers the decay rate from noiseless data") {
  OdeSystem system;
  system.dim = 1;
  system.y0 = {1.0};
  system.rhs = [](double, std::span<const double> y,
                  std::span<const double> params, std::span<double> dy) {
    dy[0] = -params[0] * y[0];
  };
  CalibrationData data;
  data.coords = {0};
  for (int r = 1; r <= 8; ++r) {
    const double t = r * 1.0;
    data.times.push_back(t);
    data.values.push_back({std::exp(-0.1 * t)});
  }
  const std::pair<double, double> bounds[] = {{0.001, 1.0}};
  CalibrationResult res = calibrate(system, data, bounds, 8.0, 0.01);
  CHECK(!res.degenerate);
  CHECK(std::fabs(res.params[0] - 0.1) < 1e-3);
}

TEST_CASE("flat objective is reported as degenerate with the midpoint") {
  OdeSystem system;
  system.dim = 1;
  system.y0 = {1.0};
  system.rhs = [](double, std::span<const double> y,
                  std::span<const double> params, std::span<double> dy) {
    dy[0] = -params[0] * y[0];
  };
  CalibrationData data;
  data.coords = {0};
  data.times = {0.0};  // only constrains the known initial value
  data.values = {{1.0}};
  const std::pair<double, double> bounds[] = {{0.2, 0.8}};
  CalibrationResult res = calibrate(system, data, bounds, 5.0, 0.01);
  CHECK(res.degenerate);
  CHECK(res.params[0] == doctest::Approx(0.5));
}

TEST_CASE("mean path interpolates linearly and clamps at the ends") {
  MeanPath path({0.0, 1.0, 2.0}, {{0.0, 2.0, 2.0}});
  CHECK(path.value(0, 0.5) == doctest::Approx(1.0));
  CHECK(path.value(0, -3.0) == 0.0);
  CHECK(path.value(0, 9.0) == 2.0);
}

}  // TEST_SUITE
