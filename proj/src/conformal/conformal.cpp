#include "covop/conformal.hpp"

#include <algorithm>
#include <sstream>

namespace covop {

namespace {

void validate(int n, const Generator& g) {
  if (const auto* t = std::get_if<Translation>(&g)) {
    if (t->v.size() != static_cast<std::size_t>(n)) throw DimensionMismatch("translation vector has the wrong dimension");
  } else if (const auto* r = std::get_if<Rotation>(&g)) {
    if (r->R.rows() != n || r->R.cols() != n) throw DimensionMismatch("rotation matrix has the wrong size");
    const double orth = (r->R.transpose() * r->R - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (orth > 1e-12) throw DomainError("rotation matrix is not orthogonal");
    if (std::abs(r->R.determinant() - 1.0) > 1e-12) throw DomainError("rotation matrix has determinant != 1");
  } else if (const auto* d = std::get_if<Dilation>(&g)) {
    if (!(d->r > 0)) throw DomainError("dilation factor must be positive");
  }
}

Generator invert(const Generator& g) {
  if (const auto* t = std::get_if<Translation>(&g)) {
    Translation inv{t->v};
    for (auto& x : inv.v) x = -x;
    return inv;
  }
  if (const auto* r = std::get_if<Rotation>(&g)) return Rotation{r->R.transpose()};
  if (const auto* d = std::get_if<Dilation>(&g)) return Dilation{1.0 / d->r};
  return Inversion{};
}

}  // namespace

std::string describe(const Generator& g) {
  std::ostringstream out;
  if (const auto* t = std::get_if<Translation>(&g)) {
    out << "T(";
    for (std::size_t i = 0; i < t->v.size(); ++i) out << (i ? "," : "") << t->v[i];
    out << ")";
  } else if (std::holds_alternative<Rotation>(g)) {
    out << "R";
  } else if (const auto* d = std::get_if<Dilation>(&g)) {
    out << "D(" << d->r << ")";
  } else {
    out << "S";
  }
  return out.str();
}

ConformalMap::ConformalMap(int n, std::vector<Generator> word) : n_(n), word_(std::move(word)) {
  for (const auto& g : word_) validate(n_, g);
}

ConformalMap ConformalMap::translation(std::vector<double> v) {
  const int n = static_cast<int>(v.size());
  return ConformalMap(n, {Translation{std::move(v)}});
}

ConformalMap ConformalMap::rotation(const Eigen::MatrixXd& R) {
  return ConformalMap(static_cast<int>(R.rows()), {Rotation{R}});
}

ConformalMap ConformalMap::dilation(int n, double r) { return ConformalMap(n, {Dilation{r}}); }

ConformalMap ConformalMap::inversion(int n) { return ConformalMap(n, {Inversion{}}); }

ConformalMap ConformalMap::inverse() const {
  std::vector<Generator> w;
  w.reserve(word_.size());
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) w.push_back(invert(*it));
  ConformalMap m(n_);
  m.word_ = std::move(w);
  return m;
}

bool ConformalMap::preserves_hyperplane() const {
  const Eigen::Index last = n_ - 1;
  for (const auto& g : word_) {
    if (const auto* t = std::get_if<Translation>(&g)) {
      if (t->v.back() != 0.0) return false;
    } else if (const auto* r = std::get_if<Rotation>(&g)) {
      for (Eigen::Index i = 0; i < last; ++i) {
        if (std::abs(r->R(i, last)) > 1e-12 || std::abs(r->R(last, i)) > 1e-12) return false;
      }
      if (std::abs(r->R(last, last) - 1.0) > 1e-12) return false;
    }
  }
  return true;
}

bool ConformalMap::contains_inversion() const {
  return std::any_of(word_.begin(), word_.end(), [](const Generator& g) { return std::holds_alternative<Inversion>(g); });
}

double ConformalMap::min_inversion_radius(std::span<const double> x) const {
  std::vector<double> p(x.begin(), x.end());
  check_dim(p.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : word_) {
    if (std::holds_alternative<Inversion>(g)) {
      const double r = std::sqrt(norm_sq(p));
      best = std::min(best, r);
      if (r < 1e-10) return r;
    }
    p = apply(g, std::move(p));
  }
  return best;
}

ConformalMap operator*(const ConformalMap& outer, const ConformalMap& inner) {
  if (outer.n_ != inner.n_) throw DimensionMismatch("composing maps of different dimension");
  ConformalMap m(inner.n_);
  m.word_ = inner.word_;
  m.word_.insert(m.word_.end(), outer.word_.begin(), outer.word_.end());
  return m;
}

std::string ConformalMap::to_string() const {
  if (word_.empty()) return "id";
  std::string s;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) {
    if (!s.empty()) s += "∘";
    s += describe(*it);
  }
  return s;
}

TestFunction TestFunction::gaussian(std::vector<double> center, double width, double scale) {
  if (!(width > 0)) throw DomainError("Gaussian width must be positive");
  TestFunction f;
  f.dim_ = static_cast<int>(center.size());
  f.gaussian_ = true;
  f.center_ = std::move(center);
  f.width_ = width;
  f.scale_ = scale;
  return f;
}

TestFunction TestFunction::polynomial(int dim, std::vector<Monomial> terms) {
  TestFunction f;
  f.dim_ = dim;
  f.center_.assign(dim, 0.0);
  f.terms_ = std::move(terms);
  if (f.terms_.empty()) f.scale_ = 0;
  return f;
}

TestFunction TestFunction::with_prefactor(std::vector<Monomial> terms) const {
  TestFunction f = *this;
  f.terms_ = std::move(terms);
  return f;
}

TestFunction TestFunction::times_coordinate(int j) const {
  TestFunction f = *this;
  if (f.terms_.empty()) f.terms_.push_back({1.0, Exponents{}});
  for (auto& m : f.terms_) ++m.exps[j];
  return f;
}

TestFunction TestFunction::restrict_last() const {
  if (dim_ < 2) throw DimensionMismatch("cannot restrict a function of one variable");
  TestFunction f;
  f.dim_ = dim_ - 1;
  f.gaussian_ = gaussian_;
  f.center_.assign(center_.begin(), center_.end() - 1);
  f.width_ = width_;
  f.scale_ = scale_;
  if (gaussian_) f.scale_ *= std::exp(-center_.back() * center_.back() / width_);
  const bool had_terms = !terms_.empty();
  for (const auto& m : terms_) {
    if (m.exps[dim_ - 1] != 0) continue;
    f.terms_.push_back(m);
  }
  if (had_terms && f.terms_.empty()) f.scale_ = 0;
  return f;
}

double TestFunction::decay_radius(double eps) const {
  if (!gaussian_) return std::numeric_limits<double>::infinity();
  int degree = 0;
  for (const auto& m : terms_) degree = std::max(degree, total_degree(m.exps));
  // exp(-r^2/w) r^d < eps once r^2 > w (|log eps| + d log r); two fixed-point steps suffice.
  double r = std::sqrt(width_ * -std::log(eps));
  for (int k = 0; k < 3; ++k) r = std::sqrt(width_ * (-std::log(eps) + degree * std::log(std::max(r, 1.0) + 1.0)));
  double c = 0;
  for (double x : center_) c = std::max(c, std::abs(x));
  return r + (degree > 0 ? c : 0.0);
}

Jet<double> rho(double lambda, const ConformalMap& g, const TestFunction& f, std::span<const double> xi, int order) {
  const auto x = Jet<double>::variables(xi, order);
  const ConformalMap ginv = g.inverse();
  const auto y = ginv.act(x);
  const auto k = ginv.kappa(x);
  return pow(k, lambda) * f(y);
}

Jet<double> rho_prime(double mu, const ConformalMap& g, const TestFunction& f_prime, std::span<const double> xi_prime,
                      int order) {
  if (!g.preserves_hyperplane()) throw DomainError("rho_prime needs a map preserving the hyperplane");
  const int n = g.dimension();
  if (f_prime.dimension() != n - 1 || xi_prime.size() != static_cast<std::size_t>(n - 1)) {
    throw DimensionMismatch("rho_prime expects data on R^{n-1}");
  }
  auto x = Jet<double>::variables(xi_prime, order);
  x.push_back(Jet<double>::constant(n - 1, order, 0.0));
  const ConformalMap ginv = g.inverse();
  auto y = ginv.act(x);
  const auto k = ginv.kappa(x);
  y.pop_back();
  return pow(k, mu) * f_prime(y);
}

Eigen::MatrixXd jacobian(const ConformalMap& g, std::span<const double> x) {
  const auto y = g.act(Jet<double>::variables(x, 1));
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd J(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) J(i, j) = y[i].grad(static_cast<int>(j));
  return J;
}

Eigen::MatrixXd chart_jacobian(std::span<const double> xi) {
  const auto c = chart_c(Jet<double>::variables(xi, 1));
  const Eigen::Index n = static_cast<Eigen::Index>(xi.size());
  Eigen::MatrixXd J(n + 1, n);
  for (Eigen::Index i = 0; i <= n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) J(i, j) = c[i].grad(static_cast<int>(j));
  return J;
}

}  // namespace covop
