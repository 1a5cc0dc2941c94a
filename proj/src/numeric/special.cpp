#include "covop/special.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>

#include "covop/errors.hpp"
#include "covop/quadrature.hpp"

namespace covop {

bool near_gamma_pole(std::complex<double> z, double tol) {
  if (z.real() > 0.5) return false;
  const double k = std::round(z.real());
  return std::abs(z - std::complex<double>(k, 0.0)) <= tol * std::max(1.0, std::abs(k));
}

std::complex<double> gamma(std::complex<double> z) {
  if (near_gamma_pole(z)) throw PoleAtLambda("Gamma evaluated at a pole");
  quiet_gsl_errors();
  gsl_sf_result lnr, arg;
  const int status = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
  if (status != GSL_SUCCESS) throw PoleAtLambda(gsl_strerror(status));
  return std::polar(std::exp(lnr.val), arg.val);
}

std::complex<double> reciprocal_gamma(std::complex<double> z) {
  if (near_gamma_pole(z, 0.0)) return 0.0;
  if (near_gamma_pole(z)) {
    // Simple zero of 1/Gamma at -k with derivative (-1)^k k!.
    const double k = -std::round(z.real());
    return std::pow(-1.0, k) * std::tgamma(k + 1.0) * (z + k);
  }
  return 1.0 / gamma(z);
}

}  // namespace covop
