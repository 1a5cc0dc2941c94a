#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "covop/errors.hpp"
#include "covop/jet.hpp"

namespace covop {

struct Translation {
  std::vector<double> v;
};

// Orthogonal matrix with determinant 1, acting on column vectors.
struct Rotation {
  Eigen::MatrixXd R;
};

struct Dilation {
  double r = 1;
};

// (xi_1, ..., xi_n) -> (-xi_1, xi_2, ..., xi_n) / |xi|^2; an involution.
struct Inversion {};

using Generator = std::variant<Translation, Rotation, Dilation, Inversion>;

std::string describe(const Generator& g);

// A word of generators acting on R^n. word[0] is applied first, so the map is
// word[k-1] o ... o word[0].
class ConformalMap {
 public:
  explicit ConformalMap(int n) : n_(n) {}
  // Validates every generator: dimensions, r > 0, R orthogonal with det 1 (to 1e-12).
  ConformalMap(int n, std::vector<Generator> word);

  static ConformalMap identity(int n) { return ConformalMap(n); }
  static ConformalMap translation(std::vector<double> v);
  static ConformalMap rotation(const Eigen::MatrixXd& R);
  static ConformalMap dilation(int n, double r);
  static ConformalMap inversion(int n);

  int dimension() const { return n_; }
  const std::vector<Generator>& word() const { return word_; }

  ConformalMap inverse() const;
  // Every generator maps {xi_n = 0} onto itself.
  bool preserves_hyperplane() const;
  bool contains_inversion() const;

  // Smallest |point| at which an inversion of the word is evaluated along the path of x;
  // +infinity when the word has no inversion.
  double min_inversion_radius(std::span<const double> x) const;

  // Point action. S is double or a jet type. Throws SingularPoint when an inversion
  // is evaluated within 1e-10 of the origin.
  template <class S>
  std::vector<S> act(std::vector<S> x) const {
    check_dim(x.size());
    for (const auto& g : word_) x = apply(g, std::move(x));
    return x;
  }

  // Conformal factor through the cocycle: the product of generator factors along the path.
  template <class S>
  S kappa(std::vector<S> x) const {
    check_dim(x.size());
    S k = unit_like(x);
    for (const auto& g : word_) {
      if (const auto* d = std::get_if<Dilation>(&g)) {
        k = k * d->r;
      } else if (std::holds_alternative<Inversion>(g)) {
        k = k / norm_sq(x);
      }
      x = apply(g, std::move(x));
    }
    return k;
  }

  friend ConformalMap operator*(const ConformalMap& outer, const ConformalMap& inner);

  std::string to_string() const;

 private:
  void check_dim(std::size_t size) const {
    if (size != static_cast<std::size_t>(n_)) throw DimensionMismatch("point has the wrong dimension");
  }

  template <class S>
  static S norm_sq(const std::vector<S>& x) {
    S s = x[0] * x[0];
    for (std::size_t i = 1; i < x.size(); ++i) s = s + x[i] * x[i];
    return s;
  }

  template <class S>
  static S unit_like(const std::vector<S>& x) {
    S one = x[0] * 0.0;
    return one + 1.0;
  }

  template <class S>
  static std::vector<S> apply(const Generator& g, std::vector<S> x) {
    if (const auto* t = std::get_if<Translation>(&g)) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] + t->v[i];
    } else if (const auto* r = std::get_if<Rotation>(&g)) {
      std::vector<S> y;
      y.reserve(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        S acc = x[0] * r->R(static_cast<Eigen::Index>(i), 0);
        for (std::size_t j = 1; j < x.size(); ++j) acc = acc + x[j] * r->R(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        y.push_back(std::move(acc));
      }
      x = std::move(y);
    } else if (const auto* d = std::get_if<Dilation>(&g)) {
      for (auto& xi : x) xi = xi * d->r;
    } else {
      const S q = norm_sq(x);
      if (std::abs(base_value(q)) < 1e-20) throw SingularPoint("inversion evaluated at the origin");
      const S inv = 1.0 / q;
      for (auto& xi : x) xi = xi * inv;
      x[0] = -x[0];
    }
    return x;
  }

  int n_;
  std::vector<Generator> word_;
};

// f(x) = scale * P(x) * exp(-|x - center|^2 / width), or scale * P(x) when not Gaussian.
// P is a sum of monomials; an empty P means the constant 1.
class TestFunction {
 public:
  struct Monomial {
    double coeff;
    Exponents exps;
  };

  static TestFunction gaussian(std::vector<double> center, double width, double scale = 1.0);
  static TestFunction polynomial(int dim, std::vector<Monomial> terms);

  int dimension() const { return dim_; }
  bool is_gaussian() const { return gaussian_; }
  const std::vector<double>& center() const { return center_; }
  double width() const { return width_; }

  TestFunction with_prefactor(std::vector<Monomial> terms) const;
  // x_j * f (0-based j).
  TestFunction times_coordinate(int j) const;
  // f(x', 0) as a function on R^{dim-1}.
  TestFunction restrict_last() const;
  // Radius around the Gaussian centre outside which |f| < eps * max|f| (crude polynomial allowance).
  double decay_radius(double eps) const;

  template <class S>
  S operator()(const std::vector<S>& x) const {
    using std::exp;
    if (x.size() != static_cast<std::size_t>(dim_)) throw DimensionMismatch("test function dimension");
    S p = x[0] * 0.0;
    if (terms_.empty()) {
      p = p + 1.0;
    } else {
      for (const auto& m : terms_) {
        S mono = x[0] * 0.0 + m.coeff;
        for (int i = 0; i < dim_; ++i)
          for (int k = 0; k < m.exps[i]; ++k) mono = mono * x[i];
        p = p + mono;
      }
    }
    p = p * scale_;
    if (!gaussian_) return p;
    S q = x[0] * 0.0;
    for (int i = 0; i < dim_; ++i) {
      const S d = x[i] - center_[i];
      q = q + d * d;
    }
    return p * exp(q * (-1.0 / width_));
  }

 private:
  int dim_ = 0;
  bool gaussian_ = false;
  std::vector<double> center_;
  double width_ = 1;
  double scale_ = 1;
  std::vector<Monomial> terms_;
};

// rho_lambda(g) f near xi: kappa(g^{-1}, .)^lambda f(g^{-1}(.)), as a jet of the given order.
Jet<double> rho(double lambda, const ConformalMap& g, const TestFunction& f, std::span<const double> xi,
                int order = 2);

// The same on R^{n-1} for g preserving the hyperplane; f_prime lives on R^{n-1}.
Jet<double> rho_prime(double mu, const ConformalMap& g, const TestFunction& f_prime, std::span<const double> xi_prime,
                      int order = 2);

// Stereographic chart R^n -> S^n in R^{n+1}.
template <class S>
std::vector<S> chart_c(const std::vector<S>& xi) {
  S q = xi[0] * 0.0;
  for (const auto& x : xi) q = q + x * x;
  const S inv = 1.0 / (q + 1.0);
  std::vector<S> out;
  out.reserve(xi.size() + 1);
  out.push_back((1.0 - q) * inv);
  for (const auto& x : xi) out.push_back(x * inv * 2.0);
  return out;
}

// 2 / (1 + |xi|^2)
template <class S>
S kappa_c(const std::vector<S>& xi) {
  S q = xi[0] * 0.0;
  for (const auto& x : xi) q = q + x * x;
  return 2.0 / (q + 1.0);
}

// Jacobian of the map at x, read from first-order jets.
Eigen::MatrixXd jacobian(const ConformalMap& g, std::span<const double> x);
Eigen::MatrixXd chart_jacobian(std::span<const double> xi);

}  // namespace covop
