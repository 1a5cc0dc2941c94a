#include <cmath>
#include <cstdio>

#include "covop/juhl.hpp"
#include "covop/verify.hpp"

namespace covop {

namespace {

using J = Jet<double>;

// |x|^2 over the space coordinates x_0..x_n of an ambient jet vector.
J space_norm_sq(const std::vector<J>& v) {
  J s = v[1] * v[1];
  for (std::size_t i = 2; i < v.size(); ++i) s += v[i] * v[i];
  return s;
}

// (x_0, ..., x_n) / |x| as jets.
std::vector<J> radial_projection(const std::vector<J>& v, const J& inv_norm) {
  std::vector<J> y;
  y.reserve(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) y.push_back(v[i] * inv_norm);
  return y;
}

J abs_jet(const J& u) { return u.value() < 0 ? -u : u; }

void require_off_locus(double xn, double bound) {
  if (!(std::abs(xn) > bound)) throw DomainError("point too close to the hyperplane x_n = 0");
}

std::vector<double> unit_or_throw(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  if (!(s > 1e-24)) throw DomainError("cannot project the origin onto the sphere");
  std::vector<double> y(x);
  for (auto& v : y) v /= std::sqrt(s);
  return y;
}

std::string tag(const char* fmt, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

}  // namespace

double AmbientPoint::Q() const {
  double s = t * t;
  for (double v : x) s -= v * v;
  return s;
}

std::vector<double> AmbientPoint::coords() const {
  std::vector<double> c{t};
  c.insert(c.end(), x.begin(), x.end());
  return c;
}

std::vector<J> ambient_variables(const AmbientPoint& p, int order) { return J::variables(p.coords(), order); }

double box(const J& F) {
  double s = F.hess(0, 0);
  for (int j = 1; j < F.dim(); ++j) s -= F.hess(j, j);
  return s;
}

double B_mu(double mu, const J& F, const AmbientPoint& p) {
  const int last = static_cast<int>(p.x.size());  // jet index of x_n
  return p.x.back() * box(F) - 2 * mu * F.grad(last);
}

CheckReport check_ambient_noncompact(int n, double lambda, const TestFunction& f,
                                     const std::vector<std::vector<double>>& points, double tol) {
  if (f.dimension() != n) throw DimensionMismatch("test function dimension");
  const DiffOp e = build_E(n);
  const double mu = lambda - 0.5 * n + 1;
  std::vector<Sample> samples;
  for (const auto& xi : points) {
    const auto c = chart_c(xi);
    if (!(1 + c[0] > 0.05)) throw DomainError("point outside the chart domain");
    const AmbientPoint p{1.0, c};
    const auto v = ambient_variables(p);
    const J s = v[0] + v[1];
    const J inv = reciprocal(s);
    std::vector<J> y;
    for (int j = 2; j <= n + 1; ++j) y.push_back(v[j] * inv);
    const J F = pow(s, -lambda) * f(y);
    const double lhs = std::pow(kappa_c(xi), lambda + 1) * B_mu(mu, F, p);
    const double rhs = -apply_at(e, lambda, f(J::variables(xi, 2)), xi);
    samples.push_back({lhs, rhs, describe_point(xi) + tag(" lambda=%.4g mu=%.4g", lambda, mu)});
  }
  return make_report("ambient_noncompact", samples, tol);
}

CheckReport check_ambient_compact(int n, double lambda, const TestFunction& f_S,
                                  const std::vector<std::vector<double>>& points, double tol) {
  if (f_S.dimension() != n + 1) throw DimensionMismatch("f_S must be a function on R^{n+1}");
  const DiffOp e = build_E(n);
  const double mu = lambda - 0.5 * n + 1;
  const double d = 1 - 0.5 * n;
  std::vector<Sample> samples;
  for (const auto& raw : points) {
    const auto x = unit_or_throw(raw);
    require_off_locus(x.back(), 0.1);
    if (!(1 + x[0] > 0.05)) throw DomainError("point outside the chart domain");
    const AmbientPoint p{1.0, x};
    const auto v = ambient_variables(p);
    const J r2 = space_norm_sq(v);
    const J inv_r = pow(r2, -0.5);
    const J fy = f_S(radial_projection(v, inv_r));

    // Direct: B_mu on the degree -lambda extension.
    const J F = pow(r2, -0.5 * lambda) * fy;
    const double direct = B_mu(mu, F, p);

    // Yamabe form: x_n |x_n|^{-mu} Delta_S(|x_n|^mu f) + mu(mu-1)/x_n f.
    const J xn = v[n + 1];
    const J H = pow(r2, 0.5 * d) * pow(abs_jet(xn * inv_r), mu) * fy;
    const double xv = x.back();
    const double yamabe = xv * std::pow(std::abs(xv), -mu) * box(H) + mu * (mu - 1) / xv * fy.value();

    // Chart: -kappa_c^{-lambda-1} E_lambda (kappa_c^lambda f_S o c) at xi = x'/(1 + x_0).
    std::vector<double> xi(x.begin() + 1, x.end());
    for (auto& t : xi) t /= 1 + x[0];
    const auto w = J::variables(xi, 2);
    const J f_nc = pow(kappa_c(w), lambda) * f_S(chart_c(w));
    const double chart = -std::pow(kappa_c(xi), -lambda - 1) * apply_at(e, lambda, f_nc, xi);

    const std::string where = describe_point(x) + tag(" lambda=%.4g mu=%.4g", lambda, mu);
    samples.push_back({direct, yamabe, where + " direct vs Yamabe form"});
    samples.push_back({direct, chart, where + " direct vs chart"});
  }
  return make_report("ambient_compact", samples, tol);
}

CheckReport check_cmu2(int n, double mu, const TestFunction& F, const std::vector<AmbientPoint>& points, double tol) {
  if (F.dimension() != n + 2) throw DimensionMismatch("F must be a function on R^{n+2}");
  std::vector<Sample> samples;
  for (const auto& p : points) {
    if (p.x.size() != static_cast<std::size_t>(n + 1)) throw DimensionMismatch("ambient point dimension");
    const double xv = p.x.back();
    require_off_locus(xv, 1e-6);
    const auto v = ambient_variables(p);
    const J Fj = F(v);
    const double lhs = B_mu(mu, Fj, p);
    const J G = pow(abs_jet(v[n + 1]), mu) * Fj;
    const double rhs = xv * std::pow(std::abs(xv), -mu) * box(G) + mu * (mu - 1) / xv * Fj.value();
    samples.push_back({lhs, rhs, describe_point(p.coords()) + tag(" mu=%.4g n=%.0f", mu, n)});
  }
  return make_report("b_mu_conjugation", samples, tol);
}

CheckReport check_yamabe_constant(int n, const std::vector<std::vector<double>>& sphere_points, double tol) {
  const double d = 1 - 0.5 * n;
  const double expected = n * (n - 2) / 4.0;
  std::vector<Sample> samples;
  for (const auto& raw : sphere_points) {
    if (raw.size() != static_cast<std::size_t>(n + 1)) throw DimensionMismatch("sphere point dimension");
    const AmbientPoint p{1.0, unit_or_throw(raw)};
    const auto v = ambient_variables(p);
    samples.push_back({box(pow(space_norm_sq(v), 0.5 * d)), expected, describe_point(p.x)});
  }
  return make_report("yamabe_constant", samples, tol, 1.0);
}

Jet<double> extension_jet(Extension e, int n, const TestFunction& f_S, const AmbientPoint& p) {
  if (f_S.dimension() != n + 1 || p.x.size() != static_cast<std::size_t>(n + 1)) {
    throw DimensionMismatch("extension dimension");
  }
  const double d = 1 - 0.5 * n;
  const auto v = ambient_variables(p);
  if (e == Extension::TDependent) {
    if (!(p.t > 0)) throw DomainError("t-dependent extension needs t > 0");
    const J inv_t = reciprocal(v[0]);
    std::vector<J> y;
    for (int j = 1; j <= n + 1; ++j) y.push_back(v[j] * inv_t);
    return pow(v[0], d) * f_S(y);
  }
  const J r2 = space_norm_sq(v);
  if (!(r2.value() > 1e-24)) throw DomainError("extension evaluated at x = 0");
  const J fy = f_S(radial_projection(v, pow(r2, -0.5)));
  J F = pow(r2, 0.5 * d) * fy;
  if (e == Extension::PlusQG) {
    const J Q = v[0] * v[0] - r2;
    F += Q * pow(r2, 0.5 * (d - 2)) * fy;
  }
  return F;
}

CheckReport check_extension_independence(int n, const TestFunction& f_S, Extension a, Extension b,
                                         const std::vector<AmbientPoint>& cone_points, double tol) {
  const double d = 1 - 0.5 * n;
  std::vector<Sample> samples;
  for (const auto& p : cone_points) {
    const double scale = p.t * p.t;
    if (!(p.t > 0) || std::abs(p.Q()) > 1e-12 * scale) throw DomainError("point is not on the forward light cone");
    double values[2];
    int k = 0;
    for (Extension ext : {a, b}) {
      const J F = extension_jet(ext, n, f_S, p);
      double euler = p.t * F.grad(0);
      double size = std::abs(euler) + std::abs(F.value());
      for (std::size_t j = 0; j < p.x.size(); ++j) {
        const double term = p.x[j] * F.grad(static_cast<int>(j) + 1);
        euler += term;
        size += std::abs(term);
      }
      if (std::abs(euler - d * F.value()) > 1e-10 * std::max(1.0, size)) {
        throw DomainError("extension is not homogeneous of degree 1 - n/2 at " + describe_point(p.coords()));
      }
      values[k++] = box(F);
    }
    samples.push_back({values[0], values[1], describe_point(p.coords())});
  }
  return make_report("extension_independence", samples, tol);
}

}  // namespace covop
