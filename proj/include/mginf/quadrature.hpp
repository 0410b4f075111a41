#pragma once

#include <functional>

namespace mginf::quad {

/// Adaptive Gauss-Kronrod (31 point) on [a, b]. Throws QuadratureFailure when
/// the error estimate is grossly off (above 1e-6 of the L1 norm and 1e-12 + 1e3 * abs_tol).
/// rel_tol is floored at 1e-12.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12,
                 double abs_tol = 1e-15);

/// Fixed 10-point Gauss-Legendre rule; for short panels of smooth integrands.
double gauss10(const std::function<double(double)>& f, double a, double b);

}  // namespace mginf::quad
