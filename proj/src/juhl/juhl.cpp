#include "covop/juhl.hpp"

#include "covop/errors.hpp"
#include "covop/special.hpp"

namespace covop {

DiffOp build_E(int n) {
  const Variables& vars = lambda_xi_variables(n);
  const Poly lambda = Poly::variable(vars, std::size_t{0});
  const Poly xi_n = Poly::variable(vars, static_cast<std::size_t>(n));
  DiffOp e(n);
  e.add_term(unit_index(n), Rational(2) * lambda + Poly::constant(vars, 2 - n));
  for (int j = 1; j <= n; ++j) e.add_term(unit_index(j, 2), xi_n);
  return e;
}

std::vector<DiffOp> build_EN_sequence(int n, int N_max) {
  if (N_max < 1) throw std::invalid_argument("N must be at least 1");
  std::vector<DiffOp> seq;
  seq.reserve(N_max);
  const DiffOp e = build_E(n);
  seq.push_back(e);
  for (int k = 1; k < N_max; ++k) seq.push_back(compose(e.shift_lambda(k), seq.back()));
  return seq;
}

DiffOp build_EN(int n, int N) { return build_EN_sequence(n, N).back(); }

TangentialOp juhl_coeffs_from(const DiffOp& en, int N) {
  return decompose_tangential(restrict_to_hyperplane(en), N);
}

TangentialOp juhl_coeffs(int n, int N) { return juhl_coeffs_from(build_EN(n, N), N); }

std::vector<std::pair<Rational, Rational>> a0_factors(int n, int N) {
  std::vector<std::pair<Rational, Rational>> out;
  for (int m = N + 1; m <= 2 * N; ++m) out.emplace_back(Rational(m - n), Rational(2));
  return out;
}

Poly a0_closed_form(int n, int N) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  const Variables& vars = lambda_variables();
  Poly result = Poly::constant(vars, 1);
  const Poly lambda = Poly::variable(vars, std::size_t{0});
  for (const auto& [c, b] : a0_factors(n, N)) result = result * (b * lambda + Poly::constant(vars, c));
  return result;
}

std::complex<double> NormalizationMeta::evaluate_dtilde(std::complex<double> lambda) const {
  std::complex<double> v = std::pow(M_PI, to_double(pi_power));
  for (const auto& g : dtilde_gammas) {
    const auto arg = g.argument.at(lambda);
    if (near_gamma_pole(arg)) {
      throw PoleAtLambda("Gamma(" + g.argument.to_string() + ") has a pole at the requested lambda");
    }
    v *= std::pow(gamma(arg), g.exponent);
  }
  return v;
}

std::complex<double> NormalizationMeta::evaluate_juhl_ratio(std::complex<double> lambda) const {
  std::complex<double> v = to_double(ratio_constant);
  for (const auto& f : ratio_factors) v *= f.at(lambda);
  return v;
}

NormalizationMeta normalization_meta(int n, int N) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  NormalizationMeta meta;
  meta.n = n;
  meta.N = N;
  meta.pi_power = Rational(n * (N - 1));
  meta.dtilde_gammas.push_back({{Rational(N), Rational(1)}, 1});
  meta.dtilde_gammas.push_back({{Rational(n - N), Rational(-1)}, 1});
  if (N % 2 == 0) {
    const int half = N / 2;
    meta.parity = Parity::Even;
    meta.ratio_constant = Rational(factorial(N) / factorial(half)) * power_of_two(half - 1);
    for (int j = 1; j <= half; ++j) meta.ratio_factors.push_back({Rational(N + 2 * j - n), Rational(2)});
  } else {
    const int half = (N - 1) / 2;
    meta.parity = Parity::Odd;
    meta.ratio_constant = Rational(factorial(N) / factorial(half)) * power_of_two((N + 1) / 2);
    for (int j = 0; j <= half; ++j) {
      meta.ratio_factors.push_back({Rational(N + 1 + 2 * j - n), Rational(2)});
    }
  }
  return meta;
}

}  // namespace covop
