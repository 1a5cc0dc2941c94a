#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "covop/poly.hpp"

namespace covop {

// Monomial bookkeeping shared by all jets with the same (dim, order).
// Monomials are listed by total degree; products holds every (i, j, k) with
// monomial_i * monomial_j = monomial_k inside the truncation.
struct JetLayout {
  int dim = 0;
  int order = 0;
  std::vector<Exponents> monomials;
  std::vector<double> factorials;  // alpha! for each monomial
  std::vector<std::array<int, 3>> products;
  std::map<Exponents, int> index;

  int index_of(const Exponents& e) const {
    auto it = index.find(e);
    return it == index.end() ? -1 : it->second;
  }

  static std::shared_ptr<const JetLayout> get(int dim, int order) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{dim, order}];
    if (!slot) slot = build(dim, order);
    return slot;
  }

 private:
  static std::shared_ptr<const JetLayout> build(int dim, int order) {
    if (dim < 1 || dim > static_cast<int>(kMaxVariables) || order < 0 || order > 255) {
      throw std::invalid_argument("unsupported jet layout");
    }
    auto l = std::make_shared<JetLayout>();
    l->dim = dim;
    l->order = order;
    for (int deg = 0; deg <= order; ++deg) {
      Exponents e{};
      enumerate(l->monomials, e, 0, dim, deg);
    }
    for (std::size_t i = 0; i < l->monomials.size(); ++i) {
      l->index.emplace(l->monomials[i], static_cast<int>(i));
      double f = 1;
      for (int v = 0; v < dim; ++v)
        for (int k = 2; k <= l->monomials[i][v]; ++k) f *= k;
      l->factorials.push_back(f);
    }
    for (std::size_t i = 0; i < l->monomials.size(); ++i) {
      for (std::size_t j = 0; j < l->monomials.size(); ++j) {
        if (total_degree(l->monomials[i]) + total_degree(l->monomials[j]) > order) continue;
        Exponents sum{};
        for (int v = 0; v < dim; ++v) sum[v] = static_cast<std::uint8_t>(l->monomials[i][v] + l->monomials[j][v]);
        l->products.push_back({static_cast<int>(i), static_cast<int>(j), l->index.at(sum)});
      }
    }
    return l;
  }

  static void enumerate(std::vector<Exponents>& out, Exponents& e, int var, int dim, int remaining) {
    if (var == dim - 1) {
      e[var] = static_cast<std::uint8_t>(remaining);
      out.push_back(e);
      e[var] = 0;
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[var] = static_cast<std::uint8_t>(k);
      enumerate(out, e, var + 1, dim, remaining - k);
    }
    e[var] = 0;
  }
};

// Truncated multivariate Taylor expansion around a base point:
// sum over |alpha| <= order of c_alpha * dx^alpha, with c_alpha = d^alpha f / alpha!.
template <class T>
class Jet {
 public:
  Jet(std::shared_ptr<const JetLayout> layout, T value) : layout_(std::move(layout)), c_(layout_->monomials.size()) {
    c_[0] = value;
  }

  static Jet constant(int dim, int order, T value) { return Jet(JetLayout::get(dim, order), value); }

  // The coordinate functions x_i = point_i + dx_i.
  static std::vector<Jet> variables(std::span<const T> point, int order) {
    const int dim = static_cast<int>(point.size());
    auto layout = JetLayout::get(dim, order);
    std::vector<Jet> out;
    for (int i = 0; i < dim; ++i) {
      Jet v(layout, point[i]);
      if (order >= 1) {
        Exponents e{};
        e[i] = 1;
        v.c_[layout->index_of(e)] = T(1);
      }
      out.push_back(std::move(v));
    }
    return out;
  }

  const JetLayout& layout() const { return *layout_; }
  int dim() const { return layout_->dim; }
  int order() const { return layout_->order; }
  const std::vector<T>& coefficients() const { return c_; }

  T value() const { return c_[0]; }
  // d^alpha f at the base point; zero beyond the truncation order.
  T derivative(const Exponents& alpha) const {
    const int k = layout_->index_of(alpha);
    return k < 0 ? T(0) : c_[k] * layout_->factorials[k];
  }
  T grad(int i) const {
    Exponents e{};
    e[i] = 1;
    return derivative(e);
  }
  T hess(int i, int j) const {
    Exponents e{};
    ++e[i];
    ++e[j];
    return derivative(e);
  }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this * reciprocal(o); }
  Jet& operator+=(const T& s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(const T& s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r(a.layout_, T(0));
    for (const auto& [i, j, k] : a.layout_->products) r.c_[k] += a.c_[i] * b.c_[j];
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator+(Jet a, const T& s) { return a += s; }
  friend Jet operator+(const T& s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, const T& s) { return a -= s; }
  friend Jet operator-(const T& s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, const T& s) { return a *= T(1) / s; }
  friend Jet operator/(const T& s, const Jet& a) { return reciprocal(a) *= s; }

  // g(u) from the Taylor coefficients g_k = g^{(k)}(u0)/k!, k = 0..order.
  Jet compose_univariate(std::span<const T> g) const {
    Jet delta = *this;
    delta.c_[0] = T(0);
    Jet r(layout_, g[0]);
    Jet power = delta;
    for (int k = 1; k <= order(); ++k) {
      r += power * g[k];
      if (k < order()) power = power * delta;
    }
    return r;
  }

  friend Jet exp(const Jet& u) {
    using std::exp;
    std::vector<T> g(u.order() + 1);
    const T e = exp(u.value());
    double inv_fact = 1;
    for (int k = 0; k <= u.order(); ++k) {
      if (k > 0) inv_fact /= k;
      g[k] = e * inv_fact;
    }
    return u.compose_univariate(g);
  }

  friend Jet log(const Jet& u) {
    using std::log;
    std::vector<T> g(u.order() + 1);
    g[0] = log(u.value());
    T p = T(1);
    for (int k = 1; k <= u.order(); ++k) {
      p /= u.value();
      g[k] = (k % 2 == 1 ? T(1) : T(-1)) * p / T(k);
    }
    return u.compose_univariate(g);
  }

  // u^a for a base value off the branch cut.
  friend Jet pow(const Jet& u, const T& a) {
    using std::pow;
    std::vector<T> g(u.order() + 1);
    T binom = T(1);  // a(a-1)...(a-k+1)/k!
    for (int k = 0; k <= u.order(); ++k) {
      if (k > 0) binom *= (a - T(k - 1)) / T(k);
      g[k] = binom * pow(u.value(), a - T(k));
    }
    return u.compose_univariate(g);
  }

  friend Jet sqrt(const Jet& u) { return pow(u, T(0.5)); }
  friend Jet reciprocal(const Jet& u) {
    std::vector<T> g(u.order() + 1);
    T p = T(1) / u.value();
    for (int k = 0; k <= u.order(); ++k) {
      g[k] = (k % 2 == 0 ? p : -p);
      p /= u.value();
    }
    return u.compose_univariate(g);
  }

 private:
  void check(const Jet& o) const {
    if (layout_ != o.layout_) throw std::invalid_argument("jets from different layouts");
  }

  std::shared_ptr<const JetLayout> layout_;
  std::vector<T> c_;
};

// Second-order jets: value, gradient and Hessian.
using Jet2 = Jet<double>;

inline std::vector<Jet2> jet2_variables(std::span<const double> point) { return Jet2::variables(point, 2); }

// Plain value of a scalar or a jet, used for guards that inspect the base point.
inline double base_value(double x) { return x; }
inline std::complex<double> base_value(std::complex<double> x) { return x; }
template <class T>
T base_value(const Jet<T>& j) {
  return j.value();
}

}  // namespace covop
