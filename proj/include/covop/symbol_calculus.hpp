#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "covop/affine.hpp"
#include "covop/rational_function.hpp"

namespace covop {

// rf(λ) * 2^{two_exp(λ)} * π^{pi_half_exp/2} * i^{i_pow}.
//
// Normal form: i_pow is 0 or 1 (a factor i^2 = -1 moves into rf), the
// constant part of two_exp lies in [0, 1) (integer powers of 2 move into rf),
// and zero is stored with all tracked exponents cleared. Two normalised
// coefficients are equal iff their components are equal.
class SymCoeff {
 public:
  SymCoeff();  // zero
  SymCoeff(const RationalFunction& rf);  // NOLINT: plain rational functions convert
  SymCoeff(RationalFunction rf, AffineLambda two_exp, Rational pi_half_exp, int i_pow);

  static SymCoeff power_of_two(const AffineLambda& e);
  static SymCoeff pi_half_power(const Rational& k);
  static SymCoeff imaginary_unit();

  const RationalFunction& rf() const { return rf_; }
  const AffineLambda& two_exp() const { return two_exp_; }
  const Rational& pi_half_exp() const { return pi_half_exp_; }
  int i_pow() const { return i_pow_; }
  bool is_zero() const { return rf_.is_zero(); }

  // True when the transcendental parts agree, so the two can be added.
  bool commensurable_with(const SymCoeff& o) const;

  // Throws IncommensurableCoefficients unless one side is zero or both are commensurable.
  SymCoeff& operator+=(const SymCoeff& o);
  SymCoeff& operator*=(const SymCoeff& o);
  SymCoeff operator-() const;
  friend SymCoeff operator+(SymCoeff a, const SymCoeff& b) { return a += b; }
  friend SymCoeff operator-(SymCoeff a, const SymCoeff& b) { return a += -b; }
  friend SymCoeff operator*(SymCoeff a, const SymCoeff& b) { return a *= b; }
  friend bool operator==(const SymCoeff& a, const SymCoeff& b);

  std::complex<double> evaluate(std::complex<double> lambda) const;
  std::string to_string() const;

 private:
  void normalize();

  RationalFunction rf_;
  AffineLambda two_exp_;
  Rational pi_half_exp_;
  int i_pow_ = 0;
};

// What the kernel multiplies on the Fourier side: f^ or d f^/d eta_n.
enum class Target { Fhat = 0, dFhat_dn = 1 };

// coeff * eta_n^eta_n_pow * h_s(eta) (x) target, with h_s = |eta|^s / Gamma(n/2 + s/2).
struct HTerm {
  SymCoeff coeff;
  int eta_n_pow = 0;
  AffineLambda s;
  Target target = Target::Fhat;
};

// Formal sum of HTerms in dimension n. Terms are keyed by (target, s, eta_n_pow),
// so like terms are merged on insertion and zero coefficients never survive.
class HExpr {
 public:
  using Key = std::tuple<Target, AffineLambda, int>;

  explicit HExpr(int n) : n_(n) {}
  static HExpr term(int n, const SymCoeff& c, int eta_n_pow, const AffineLambda& s, Target t);

  int dimension() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::vector<HTerm> terms() const;
  // Coefficient of a given (target, s, eta_n power); zero if absent.
  SymCoeff coefficient(Target t, const AffineLambda& s, int eta_n_pow) const;

  void add(const HTerm& t);
  HExpr& operator+=(const HExpr& o);
  HExpr& operator-=(const HExpr& o);
  friend HExpr operator+(HExpr a, const HExpr& b) { return a += b; }
  friend HExpr operator-(HExpr a, const HExpr& b) { return a -= b; }
  friend HExpr operator*(const SymCoeff& c, const HExpr& e);
  friend bool operator==(const HExpr& a, const HExpr& b);

  // Numeric value at a point eta (eta.size() == n), given f^(eta) and d f^/d eta_n (eta).
  std::complex<double> evaluate(std::complex<double> lambda, std::span<const double> eta,
                                std::complex<double> fhat, std::complex<double> dfhat) const;

  std::string to_string() const;

 private:
  int n_;
  std::map<Key, SymCoeff> terms_;
};

// h^_s = 2^{n+s} π^{n/2} h_{-n-s}, applied to every kernel of e.
// Only bare kernels (no eta_n factor) have a transform in this calculus; others throw DomainError.
HExpr fourier_of_h(const HExpr& e);

// Multiply by eta_n.
HExpr mul_eta_n(const HExpr& e);

// Multiply by |eta|^2 using |eta|^2 h_s = (n+s)/2 h_{s+2}.
HExpr mul_norm_sq(const HExpr& e);

// d/d eta_n by the product rule, using d_n h_s = 2s/(n+s-2) eta_n h_{s-2}.
// Throws ClosureExceeded on a dFhat_dn target and DomainError when n+s-2 vanishes identically
// while s does not.
HExpr d_dn(const HExpr& e);

// Move every term to the given target without changing coefficients.
HExpr retarget(const HExpr& e, Target t);

// Fourier symbol of J_{λ+shift} acting on f: h^_{-2n+2(λ+shift)} (x) f^.
HExpr j_symbol(int n, int shift = 0);

// Fourier side of M o J_λ, computed as (-i) d/d eta_n of j_symbol(n).
HExpr symbol_MJ(int n);

// Fourier side of J_{λ+1} o E_λ. E_λ acts on f^ as (-i)[(2λ-n+2) eta_n f^ + d_n(-|eta|^2 f^)],
// which is multiplied by the symbol of J_{λ+1}.
HExpr symbol_JE(int n);

// The two displayed closed forms, written out term by term.
HExpr symbol_MJ_closed_form(int n);
HExpr symbol_JE_closed_form(int n);

// symbol_MJ(n) == factor * symbol_JE(n) exactly.
bool check_MI_with(int n, const RationalFunction& factor);
// check_MI_with(n, 1/(4(λ-n+1))).
bool check_MI(int n);

// Largest relative error over the samples between the product of the J_λ and J_{n-λ}
// symbols at a point of the unit sphere and π^n / (Γ(λ) Γ(n-λ)).
// Throws PoleAtLambda when λ or n-λ is within 1e-12 of a nonpositive integer.
double inverseJ_max_rel_err(int n, std::span<const std::complex<double>> lambda_samples);
bool check_inverseJ(int n, std::span<const std::complex<double>> lambda_samples, double tol = 1e-10);

}  // namespace covop
