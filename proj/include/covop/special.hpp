#pragma once

#include <complex>

namespace covop {

// Complex Gamma function. Throws PoleAtLambda within 1e-12 of a nonpositive integer.
std::complex<double> gamma(std::complex<double> z);

// 1/Gamma(z), entire; exact zero at nonpositive integers.
std::complex<double> reciprocal_gamma(std::complex<double> z);

// True when z lies within tol of a nonpositive integer.
bool near_gamma_pole(std::complex<double> z, double tol = 1e-12);

}  // namespace covop
