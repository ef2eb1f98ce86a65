#pragma once

#include <functional>

namespace bgwcoal {

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod 7(15) integration of f over [a,b] to the
/// given absolute tolerance. Splits the interval with the largest local error
/// until the summed error bound meets the tolerance. Throws QuadratureError
/// (carrying the achieved estimate and bound) if the subdivision budget runs
/// out first.
QuadratureResult integrate_gk(const std::function<double(double)>& f, double a,
                              double b, double abs_tol,
                              int max_subdivisions = 400);

}  // namespace bgwcoal
