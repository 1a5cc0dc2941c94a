#pragma once

#include <complex>
#include <string>
#include <vector>

#include "covop/affine.hpp"
#include "covop/diffop.hpp"

namespace covop {

// E_lambda = (2 lambda - n + 2) d/dxi_n + xi_n Lap on R^n, lambda symbolic.
DiffOp build_E(int n);

// E_{lambda,N} = E_{lambda+N-1} o ... o E_lambda (E_lambda applied first).
DiffOp build_EN(int n, int N);

// E_{lambda,1}, ..., E_{lambda,N_max}, built incrementally.
std::vector<DiffOp> build_EN_sequence(int n, int N_max);

// Tangential coefficients a_j(lambda, N) of E_N(lambda) = res o E_{lambda,N}.
TangentialOp juhl_coeffs(int n, int N);
TangentialOp juhl_coeffs_from(const DiffOp& en, int N);

// prod_{m=N+1}^{2N} (2 lambda - n + m), over lambda_variables().
Poly a0_closed_form(int n, int N);

// The linear factors of a0_closed_form as (constant, lambda coefficient) pairs.
std::vector<std::pair<Rational, Rational>> a0_factors(int n, int N);

struct GammaFactor {
  AffineLambda argument;
  int exponent = 1;
};

enum class Parity { Even, Odd };

// Gamma-factor normalisation data attached to E_{lambda,N}. The Gamma factors
// are never multiplied into the operator; they are only evaluated numerically.
struct NormalizationMeta {
  int n = 0;
  int N = 0;
  // pi^{n(N-1)} Gamma(lambda+N) Gamma(n-lambda-N)
  Rational pi_power;
  std::vector<GammaFactor> dtilde_gammas;
  // Factor converting Juhl's normalisation into E_N(lambda):
  // ratio_constant * prod ratio_factors.
  Parity parity = Parity::Even;
  Rational ratio_constant;
  std::vector<AffineLambda> ratio_factors;

  // Throws PoleAtLambda at a pole of one of the Gamma factors.
  std::complex<double> evaluate_dtilde(std::complex<double> lambda) const;
  std::complex<double> evaluate_juhl_ratio(std::complex<double> lambda) const;
};

NormalizationMeta normalization_meta(int n, int N);

}  // namespace covop
