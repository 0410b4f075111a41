#include "mginf/quadrature.hpp"

#include "mginf/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mginf::quad {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  double err = 0.0;
  double l1 = 0.0;
  // Requests below ~1e-12 relative sit under the roundoff of the Kronrod
  // estimate and only drive the recursion to its depth limit.
  const double tol = std::max(rel_tol, 1e-12);
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &err, &l1);
  if (!std::isfinite(v) || err > std::max(1e3 * abs_tol + 1e-12, 1e-6 * l1)) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "adaptive quadrature on [%.6g, %.6g] did not converge (value %.6g, error %.3g)", a,
                  b, v, err);
    throw Error(ErrorCode::QuadratureFailure, buf);
  }
  return v;
}

double gauss10(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
}

}  // namespace mginf::quad
