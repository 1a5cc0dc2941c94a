#pragma once

#include <map>
#include <string>
#include <vector>

#include "covop/poly.hpp"
#include "covop/rational_function.hpp"

namespace covop {

// Derivative multi-index alpha; slot j-1 holds the power of d/dxi_j.
using MultiIndex = Exponents;

MultiIndex unit_index(int j, int power = 1);  // (d/dxi_j)^power, 1-based j

// Differential operator on R^n, sum_alpha p_alpha(lambda, xi) d^alpha.
// Coefficients live over lambda_xi_variables(n). Operators act on the left:
// compose(A, B) applies B first.
class DiffOp {
 public:
  using Terms = std::map<MultiIndex, Poly>;

  explicit DiffOp(int n);

  static DiffOp identity(int n);
  static DiffOp multiplication(int n, const Poly& p);
  static DiffOp derivative(int n, const MultiIndex& alpha, const Poly& coeff);
  static DiffOp laplacian(int n);
  // Laplacian in xi_1..xi_{n-1}.
  static DiffOp tangential_laplacian(int n);

  int dimension() const { return n_; }
  const Variables& variables() const { return lambda_xi_variables(n_); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int order() const;
  Poly coefficient(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, const Poly& coeff);

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(const Rational& c, DiffOp a);
  friend bool operator==(const DiffOp& a, const DiffOp& b) = default;

  // Every coefficient with lambda replaced by lambda + c.
  DiffOp shift_lambda(const Rational& c) const;

  std::string to_string() const;

 private:
  int n_;
  Terms terms_;
};

// Leibniz product: (p d^a) o (q d^b) = p sum_{g <= a} binom(a, g) (d^g q) d^{a-g+b}.
DiffOp compose(const DiffOp& outer, const DiffOp& inner);

// D(p); p must be over lambda_xi_variables(D.dimension()).
Poly apply(const DiffOp& d, const Poly& p);

// Coefficients evaluated at xi_n = 0; derivative indices (including d/dxi_n)
// are kept as transversal derivatives taken before restriction.
DiffOp restrict_to_hyperplane(const DiffOp& d);

// res o sum_j a_j (d/dxi_n)^{N-2j} Lap'^j.
struct TangentialOp {
  int n = 0;
  int N = 0;
  std::vector<RationalFunction> coeffs;  // a_0 .. a_{floor(N/2)}

  // The unrestricted operator sum_j a_j d_n^{N-2j} Lap'^j (requires polynomial a_j).
  DiffOp to_diffop() const;
};

// Formal-symbol matching of a restricted operator with constant (lambda-only)
// coefficients against sum_j a_j eta_n^{N-2j} |eta'|^{2j}. Throws
// NonTangentialForm when a coefficient depends on xi or the residual after
// matching is nonzero.
TangentialOp decompose_tangential(const DiffOp& restricted, int N);

}  // namespace covop
