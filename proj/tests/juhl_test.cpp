#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covop/errors.hpp"
#include "covop/juhl.hpp"

using namespace covop;

namespace {

Poly var(int n, int j) { return Poly::variable(lambda_xi_variables(n), static_cast<std::size_t>(j)); }
Poly cst(int n, const Rational& c) { return Poly::constant(lambda_xi_variables(n), c); }

RationalFunction lin(int c, int b) { return RationalFunction::affine(c, b); }

}  // namespace

TEST_CASE("build_E: explicit instances") {
  // n = 2: 2l d2 + xi2 (d1^2 + d2^2)
  DiffOp e2(2);
  e2.add_term(unit_index(2), Rational(2) * var(2, 0));
  e2.add_term(unit_index(1, 2), var(2, 2));
  e2.add_term(unit_index(2, 2), var(2, 2));
  CHECK(build_E(2) == e2);

  // n = 1: (2l+1) d1 + xi1 d1^2
  DiffOp e1(1);
  e1.add_term(unit_index(1), Rational(2) * var(1, 0) + cst(1, 1));
  e1.add_term(unit_index(1, 2), var(1, 1));
  CHECK(build_E(1) == e1);

  for (int n = 1; n <= 6; ++n) {
    CHECK(apply(build_E(n), var(n, n)) == Rational(2) * var(n, 0) + cst(n, 2 - n));
    CHECK_FALSE(build_E(n).is_zero());
  }
}

TEST_CASE("build_EN: N = 1, and E_{l,N} xi_n^N at N = 2, 3") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(build_EN(n, 1) == build_E(n));
    const Poly l = var(n, 0);
    auto f = [&](int m) { return Rational(2) * l + cst(n, m - n); };
    CHECK(apply(build_EN(n, 2), var(n, n).pow(2)) == Rational(2) * f(3) * f(4));
    CHECK(apply(build_EN(n, 3), var(n, n).pow(3)) == Rational(6) * f(4) * f(5) * f(6));
  }
}

TEST_CASE("E_mu on powers: E_mu xi_n^k = k(2mu - n + 1 + k) xi_n^{k-1}") {
  for (int n = 1; n <= 6; ++n) {
    const DiffOp e = build_E(n);
    for (int k = 1; k <= 10; ++k) {
      const Poly expected = Rational(k) * (Rational(2) * var(n, 0) + cst(n, 1 + k - n)) * var(n, n).pow(k - 1);
      CHECK(apply(e, var(n, n).pow(k)) == expected);
    }
  }
}

TEST_CASE("E_{l,N} xi_n^N against factor-by-factor application") {
  // Independent route: apply E_l, then E_{l+1}, ... to xi_n^N without composing operators.
  for (int n = 2; n <= 4; ++n) {
    const DiffOp e = build_E(n);
    const auto seq = build_EN_sequence(n, 5);
    for (int N = 1; N <= 5; ++N) {
      Poly p = var(n, n).pow(N);
      for (int k = 0; k < N; ++k) p = apply(e.shift_lambda(k), p);
      CHECK(apply(seq[N - 1], var(n, n).pow(N)) == p);
      CHECK(p == Rational(factorial(N)) * a0_closed_form(n, N).rebase(lambda_xi_variables(n)));
    }
  }
}

TEST_CASE("juhl_coeffs: N = 1, N = 2") {
  for (int n = 2; n <= 6; ++n) {
    const TangentialOp t1 = juhl_coeffs(n, 1);
    REQUIRE(t1.coeffs.size() == 1);
    CHECK(t1.coeffs[0] == lin(2 - n, 2));

    const TangentialOp t2 = juhl_coeffs(n, 2);
    REQUIRE(t2.coeffs.size() == 2);
    CHECK(t2.coeffs[0] == lin(3 - n, 2) * lin(4 - n, 2));
    CHECK(t2.coeffs[1] == lin(4 - n, 2));
  }
}

TEST_CASE("a0_closed_form: instances") {
  const Poly l = Poly::variable(lambda_variables(), "lambda");
  const auto one = Poly::constant(lambda_variables(), 1);
  for (int n = 1; n <= 6; ++n) {
    CHECK(a0_closed_form(n, 1) == Rational(2) * l + Rational(2 - n) * one);
    CHECK(a0_closed_form(n, 2) == (Rational(2) * l + Rational(3 - n) * one) * (Rational(2) * l + Rational(4 - n) * one));
  }
  CHECK(a0_closed_form(3, 3) ==
        (Rational(2) * l + one) * (Rational(2) * l + Rational(2) * one) * (Rational(2) * l + Rational(3) * one));
}

TEST_CASE("juhl_coeffs: a_0 matches the closed form, tangential structure, polynomial a_j") {
  for (int n = 2; n <= 4; ++n) {
    const auto seq = build_EN_sequence(n, 6);
    for (int N = 1; N <= 6; ++N) {
      const TangentialOp t = juhl_coeffs_from(seq[N - 1], N);
      CHECK(t.coeffs.size() == static_cast<std::size_t>(N / 2 + 1));
      CHECK(t.coeffs[0] == RationalFunction(a0_closed_form(n, N)));
      for (const auto& a : t.coeffs) CHECK(a.is_polynomial());
      // The reassembled tangential operator is exactly res o E_{l,N}.
      CHECK(restrict_to_hyperplane(t.to_diffop()) == restrict_to_hyperplane(seq[N - 1]));
    }
  }
}

TEST_CASE("E_{l+1,N} o E_l = E_{l,N+1}") {
  for (int n = 2; n <= 3; ++n) {
    const auto seq = build_EN_sequence(n, 5);
    for (int N = 1; N < 5; ++N) {
      CHECK(compose(seq[N - 1].shift_lambda(1), build_E(n)) == seq[N]);
    }
  }
}

TEST_CASE("normalization_meta: Juhl ratio instances") {
  const auto even = normalization_meta(4, 2);
  CHECK(even.parity == Parity::Even);
  CHECK(std::abs(even.evaluate_juhl_ratio(0.0)) == 0.0);
  CHECK(std::abs(even.evaluate_juhl_ratio(1.0) - 4.0) < 1e-14);  // 2 * 1 * (2 - 4 + 4)

  const auto odd = normalization_meta(3, 1);
  CHECK(odd.parity == Parity::Odd);
  CHECK(std::abs(odd.evaluate_juhl_ratio(1.0) - 2.0) < 1e-14);
  CHECK(odd.ratio_constant == 2);

  // N = 3: 3!/1! * 2^2 * (2l-n+4)(2l-n+6)
  const auto odd3 = normalization_meta(2, 3);
  CHECK(odd3.ratio_constant == 24);
  REQUIRE(odd3.ratio_factors.size() == 2);
  CHECK(std::abs(odd3.evaluate_juhl_ratio(0.5) - 24.0 * 3.0 * 5.0) < 1e-12);

  // N = 4: 4!/2! * 2^1 * (2l-n+6)(2l-n+8)
  const auto even4 = normalization_meta(3, 4);
  CHECK(even4.ratio_constant == 24);
  REQUIRE(even4.ratio_factors.size() == 2);
}

TEST_CASE("normalization_meta: dtilde descriptor") {
  const auto m = normalization_meta(2, 1);
  CHECK(m.pi_power == 0);
  REQUIRE(m.dtilde_gammas.size() == 2);
  CHECK(m.dtilde_gammas[0].argument.constant == 1);
  CHECK(m.dtilde_gammas[0].argument.lambda == 1);
  CHECK(m.dtilde_gammas[1].argument.constant == 1);
  CHECK(m.dtilde_gammas[1].argument.lambda == -1);
  // Gamma(1.3) Gamma(0.7) = pi * 0.3 / sin(0.3 pi)
  const double expected = M_PI * 0.3 / std::sin(0.3 * M_PI);
  CHECK(std::abs(m.evaluate_dtilde(0.3).real() - expected) < 1e-12);
  CHECK_THROWS_AS(m.evaluate_dtilde(1.0), PoleAtLambda);
  CHECK_THROWS_AS(m.evaluate_dtilde(-1.0), PoleAtLambda);

  const auto m3 = normalization_meta(3, 2);
  CHECK(m3.pi_power == 3);
  const std::complex<double> lam(0.25, 0.1);
  const auto v = m3.evaluate_dtilde(lam);
  CHECK(std::isfinite(v.real()));
}
