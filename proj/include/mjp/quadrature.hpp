#ifndef MJP_QUADRATURE_HPP
#define MJP_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace mjp {

// Adaptive Simpson integration with absolute tolerance. Used as the
// fallback for rate integrals without a closed-form antiderivative and as
// an independent cross-check in tests.
double integrate_simpson(const std::function<double(double)>& f, double a,
                         double b, double abs_tol = 1e-9);

}  // namespace mjp

#endif
