#pragma once

#include <cstddef>
#include <functional>

namespace covop {

struct QuadResult {
  double value = 0;
  double abserr = 0;
};

// Switch GSL's abort-on-error handler off; idempotent and thread safe.
void quiet_gsl_errors();

// Integral over [0, b] of r^alpha g(r), alpha > -1, by the algebraic-singularity rule.
// Throws QuadratureBudgetExceeded when the subdivision limit is hit.
QuadResult integrate_power_weight(const std::function<double(double)>& g, double alpha, double b, double epsabs,
                                  double epsrel, std::size_t limit = 2000);

// Adaptive Gauss-Kronrod over [a, b].
QuadResult integrate(const std::function<double(double)>& g, double a, double b, double epsabs, double epsrel,
                     std::size_t limit = 2000);

// Integral over [a, infinity).
QuadResult integrate_to_infinity(const std::function<double(double)>& g, double a, double epsabs, double epsrel,
                                 std::size_t limit = 2000);

}  // namespace covop
