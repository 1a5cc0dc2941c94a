#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covop/rational.hpp"

namespace covop {

inline constexpr std::size_t kMaxVariables = 12;

// Dense exponent vector. Only the first `Variables::size()` slots are used;
// the rest stay zero so that lexicographic comparison is well defined.
using Exponents = std::array<std::uint8_t, kMaxVariables>;

int total_degree(const Exponents& e);

// Ordered list of formal variable names, shared between all polynomials built
// over it. Equality is by content.
class Variables {
 public:
  Variables();
  explicit Variables(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }

  // Throws UnknownVariable.
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  friend bool operator==(const Variables& a, const Variables& b);

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

// {"lambda"}.
const Variables& lambda_variables();
// {"lambda", "xi1", ..., "xin"}; index 0 is lambda, index j is xi_j.
const Variables& lambda_xi_variables(int n);

// Sparse multivariate polynomial with exact rational coefficients.
class Poly {
 public:
  using Terms = std::map<Exponents, Rational>;

  Poly() = default;
  explicit Poly(Variables vars) : vars_(std::move(vars)) {}

  static Poly constant(const Variables& vars, const Rational& c);
  static Poly variable(const Variables& vars, std::string_view name);
  static Poly variable(const Variables& vars, std::size_t index);
  static Poly monomial(const Variables& vars, const Exponents& e, const Rational& c);

  const Variables& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;
  int degree_in(std::size_t var) const;
  int total_degree() const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  // Adds c * x^e in place.
  void add_term(const Exponents& e, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned k) const;

  // Formal partial derivative; `partial(name)` throws UnknownVariable.
  Poly partial(std::size_t var) const;
  Poly partial(std::string_view name) const;
  // Iterated derivative d^k / d var^k.
  Poly partial(std::size_t var, unsigned k) const;

  // p with x_var set to `value`; the variable list is unchanged.
  Poly evaluate(std::size_t var, const Rational& value) const;
  // p(x_var + shift).
  Poly shift(std::size_t var, const Rational& shift) const;
  // p with x_var replaced by another polynomial over the same variables.
  Poly substitute(std::size_t var, const Poly& value) const;
  // Same terms re-expressed over `target`, mapping variables by name.
  // Throws UnknownVariable if a variable in use is absent from `target`.
  Poly rebase(const Variables& target) const;

  // Numeric evaluation, values[i] bound to variable i.
  template <class T>
  T eval(std::span<const T> values) const;

  std::string to_string() const;

 private:
  void check_same(const Poly& other) const;

  Variables vars_;
  Terms terms_;
};

template <class T>
T Poly::eval(std::span<const T> values) const {
  T sum{};
  for (const auto& [e, c] : terms_) {
    T term = T(to_double(c));
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) term = term * values[i];
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace covop
