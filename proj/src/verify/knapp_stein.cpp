#include <cmath>
#include <cstdio>

#include "covop/quadrature.hpp"
#include "covop/special.hpp"
#include "covop/verify.hpp"

namespace covop {

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

bool is_similarity(const ConformalMap& g) { return !g.contains_inversion(); }

}  // namespace

double knapp_stein(int n, double lambda, const std::function<double(const std::vector<double>&)>& u,
                   std::span<const double> xi, double radius, double quad_tol) {
  if (n != 1 && n != 2) throw DomainError("Knapp-Stein quadrature is implemented for n = 1, 2");
  if (!(lambda > 0.5 * n)) throw DomainError("Knapp-Stein quadrature needs lambda > n/2");
  if (xi.size() != static_cast<std::size_t>(n)) throw DimensionMismatch("point dimension");
  const double alpha = 2 * lambda - n - 1;
  std::vector<double> eta(xi.begin(), xi.end());
  std::function<double(double)> shell;
  std::function<double(double)> angular;
  double r_now = 0;
  if (n == 1) {
    shell = [&](double r) {
      eta[0] = xi[0] + r;
      double v = u(eta);
      eta[0] = xi[0] - r;
      return v + u(eta);
    };
  } else {
    angular = [&](double theta) {
      eta[0] = xi[0] + r_now * std::cos(theta);
      eta[1] = xi[1] + r_now * std::sin(theta);
      return u(eta);
    };
    shell = [&](double r) {
      r_now = r;
      return integrate(angular, 0.0, 2 * M_PI, 1e-3 * quad_tol * quad_tol, 1e-2 * quad_tol).value;
    };
  }
  const QuadResult q = integrate_power_weight(shell, alpha, radius, 1e-3 * quad_tol * quad_tol, quad_tol);
  return q.value * reciprocal_gamma(lambda - 0.5 * n).real();
}

std::vector<Sample> knapp_stein_samples(int n, double lambda, const ConformalMap& g, const TestFunction& f,
                                        const std::vector<std::vector<double>>& points, const KnappSteinOptions& opt) {
  if (!is_similarity(g)) throw DomainError("Knapp-Stein checks use maps without inversions");
  if (!f.is_gaussian()) throw DomainError("Knapp-Stein checks need a Gaussian test function");
  const ConformalMap ginv = g.inverse();
  const std::vector<double> origin(n, 0.0);
  const double scale = g.kappa(origin);  // constant for similarities
  const double decay = f.decay_radius(1e-3 * opt.quad_tol);
  const auto image_center = g.act(f.center());

  auto rho_f = [&](const std::vector<double>& eta) { return std::pow(ginv.kappa(eta), lambda) * f(ginv.act(eta)); };
  auto plain_f = [&](const std::vector<double>& eta) { return f(eta); };

  std::vector<Sample> out;
  for (const auto& x : points) {
    const double r_lhs = opt.radius_scale * (distance(x, image_center) + scale * decay);
    const double lhs = knapp_stein(n, lambda, rho_f, x, r_lhs, opt.quad_tol);
    const auto y = ginv.act(x);
    const double r_rhs = opt.radius_scale * (distance(y, f.center()) + decay);
    const double rhs = std::pow(ginv.kappa(x), n - lambda) * knapp_stein(n, lambda, plain_f, y, r_rhs, opt.quad_tol);
    char buf[64];
    std::snprintf(buf, sizeof buf, " lambda=%.3g", lambda);
    out.push_back({lhs, rhs, g.to_string() + " at " + describe_point(x) + buf});
  }
  return out;
}

CheckReport check_KS_intertwine(int n, double lambda, const ConformalMap& g, const TestFunction& f,
                                const std::vector<std::vector<double>>& points, double tol,
                                const KnappSteinOptions& opt) {
  return make_report("knapp_stein", knapp_stein_samples(n, lambda, g, f, points, opt), tol);
}

CheckReport check_hs_fourier_pairing(int n, double s, double tol) {
  if (n < 1) throw DomainError("dimension must be positive");
  if (!(s > -n && s < 0)) throw DomainError("the pairing check needs -n < s < 0");
  const double half_n = 0.5 * n;
  const double sphere = 2 * std::pow(M_PI, half_n) / std::tgamma(half_n);
  const double closed = std::pow(2.0, n + s - 1) * std::pow(M_PI, half_n) * sphere;

  // integral_0^infinity r^a e^{-r^2/c} dr, split where the Gaussian is negligible
  auto radial = [](double a, double c) {
    const double cut = std::sqrt(c * 60.0);
    const auto weight = [c](double r) { return std::exp(-r * r / c); };
    const double head = integrate_power_weight(weight, a, cut, 0.0, 1e-13).value;
    const double tail =
        integrate_to_infinity([a, c](double r) { return std::pow(r, a) * std::exp(-r * r / c); }, cut, 0.0, 1e-10).value;
    return head + tail;
  };

  // ghat(eta) = pi^{n/2} exp(-|eta|^2/4) for g = exp(-|x|^2)
  const double lhs = sphere * std::pow(M_PI, half_n) * radial(s + n - 1, 4.0) / std::tgamma(half_n + 0.5 * s);
  const double rhs = sphere * std::pow(2.0, n + s) * std::pow(M_PI, half_n) * radial(-s - 1, 1.0) / std::tgamma(-0.5 * s);
  char buf[64];
  std::snprintf(buf, sizeof buf, "n=%d s=%.6g", n, s);
  return make_report("hs_pairing", {{lhs, closed, std::string(buf) + " <h_s,g^>"},
                                    {rhs, closed, std::string(buf) + " <h^_s,g>"},
                                    {lhs, rhs, std::string(buf) + " both sides"}},
                     tol);
}

}  // namespace covop
