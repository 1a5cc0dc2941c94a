#pragma once

#include <complex>
#include <string>
#include <vector>

#include "covop/poly.hpp"

namespace covop {

// Rational function of the single variable lambda, kept in normal form:
// monic denominator and gcd(num, den) = 1.
class RationalFunction {
 public:
  RationalFunction();  // zero
  RationalFunction(const Rational& c);  // NOLINT: constants convert implicitly
  // Both polynomials must be over lambda_variables(). Throws on zero denominator.
  RationalFunction(const Poly& num, const Poly& den);
  explicit RationalFunction(const Poly& num);

  static RationalFunction lambda();
  // c0 + c1 * lambda.
  static RationalFunction affine(const Rational& c0, const Rational& c1);

  Poly numerator() const;
  Poly denominator() const;
  // Dense ascending coefficients.
  const std::vector<Rational>& num_coeffs() const { return num_; }
  const std::vector<Rational>& den_coeffs() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  bool is_polynomial() const { return den_.size() == 1; }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  RationalFunction operator-() const;

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }

  // Cross-multiplied polynomial identity n1*d2 == n2*d1.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  // r(lambda + c).
  RationalFunction shift(const Rational& c) const;

  // Throws PoleAtLambda when the denominator vanishes (to rounding) at x.
  std::complex<double> evaluate(std::complex<double> x) const;

  std::string to_string() const;

 private:
  void normalize();

  std::vector<Rational> num_;  // empty means zero
  std::vector<Rational> den_;  // monic, never empty
};

// Same as operator==; named for call sites that read better with a verb.
inline bool rf_eq(const RationalFunction& a, const RationalFunction& b) { return a == b; }

// Dense univariate helpers over Q (ascending coefficients, no trailing zeros).
namespace upoly {
using Coeffs = std::vector<Rational>;
void trim(Coeffs& p);
Coeffs add(const Coeffs& a, const Coeffs& b);
Coeffs sub(const Coeffs& a, const Coeffs& b);
Coeffs mul(const Coeffs& a, const Coeffs& b);
// a = q*b + r with deg r < deg b; b nonzero.
void divmod(const Coeffs& a, const Coeffs& b, Coeffs& q, Coeffs& r);
// Monic gcd; gcd(0, 0) = 0.
Coeffs gcd(Coeffs a, Coeffs b);
Coeffs from_poly(const Poly& p);  // p must be over lambda only
Poly to_poly(const Coeffs& c);
std::string to_string(const Coeffs& c, std::string_view var = "λ");
}  // namespace upoly

}  // namespace covop
