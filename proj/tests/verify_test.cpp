#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <iostream>

#include "covop/juhl.hpp"
#include "covop/sampling.hpp"
#include "covop/verify.hpp"

using namespace covop;

namespace {

std::vector<std::vector<double>> points_for(Sampler& s, const ConformalMap& g, int n, int count, bool on_hyperplane) {
  std::vector<std::vector<double>> out;
  const ConformalMap ginv = g.inverse();
  while (static_cast<int>(out.size()) < count) {
    auto x = s.point(n, -2, 2);
    if (on_hyperplane) x.back() = 0;
    if (ginv.min_inversion_radius(x) >= 0.1) out.push_back(x);
  }
  return out;
}

// E_lambda u at x by fourth-order central differences of a scalar function.
double fd_E(int n, double lambda, const std::function<double(const std::vector<double>&)>& u, std::vector<double> x) {
  const double h = 1e-3;
  auto d1 = [&](int j) {
    auto p = x;
    auto at = [&](double s) {
      p[j] = x[j] + s * h;
      return u(p);
    };
    return (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
  };
  auto d2 = [&](int j) {
    auto p = x;
    auto at = [&](double s) {
      p[j] = x[j] + s * h;
      return u(p);
    };
    return (-at(2) + 16 * at(1) - 30 * at(0) + 16 * at(-1) - at(-2)) / (12 * h * h);
  };
  double lap = 0;
  for (int j = 0; j < n; ++j) lap += d2(j);
  return (2 * lambda - n + 2) * d1(n - 1) + x[n - 1] * lap;
}

void print_failures(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed) std::cerr << r.name << " err=" << r.max_rel_err << " tol=" << r.tolerance << " " << r.diagnostics << "\n";
  }
}

}  // namespace

TEST_CASE("make_report: relative error, floor and non-finite values") {
  const auto r = make_report("x", {{1.0, 1.0 + 1e-10, "a"}, {2.0, 2.0 * (1 + 3e-9), "b"}, {0.0, 1e-30, "c"}}, 1e-8);
  CHECK(r.passed);
  CHECK(r.samples == 3);
  CHECK(r.max_rel_err == doctest::Approx(3e-9).epsilon(1e-3));
  CHECK(r.diagnostics == "b");
  const auto bad = make_report("y", {{1.0, NAN, "nan"}}, 1.0);
  CHECK_FALSE(bad.passed);
  CHECK(std::isinf(bad.max_rel_err));
  CHECK(make_report("z", {{0.0, 0.5, "p"}}, 0.1, 1.0).max_rel_err == doctest::Approx(0.5));
}

TEST_CASE("apply_at: E_lambda on a polynomial") {
  // E_l (xi_2^2) = 2 (2l - n + 2) xi_2 + 2 xi_2 in n = 2.
  const std::vector<double> x{0.3, -0.7};
  const auto v = Jet<double>::variables(x, 2);
  const double l = 0.9;
  CHECK(apply_at(build_E(2), l, v[1] * v[1], x) == doctest::Approx(2 * (2 * l) * -0.7 + 2 * -0.7));
  CHECK_THROWS_AS(apply_at(build_E(2), l, Jet<double>::variables(x, 1)[0], x), DomainError);
}

TEST_CASE("covariance_E: dilation and translation close exactly") {
  const int n = 3;
  const TestFunction f = TestFunction::gaussian({0.2, -0.4, 0.5}, 0.9);
  const double r = 1.7, lambda = 0.63;
  const std::vector<double> x{0.4, 0.1, -0.8};
  const auto dil = covariance_E_samples(n, lambda, ConformalMap::dilation(n, r), f, {x});
  std::vector<double> y{x[0] / r, x[1] / r, x[2] / r};
  const double closed = std::pow(r, -(lambda + 1)) * apply_at(build_E(n), lambda, f(Jet<double>::variables(y, 2)), y);
  CHECK(dil[0].lhs == doctest::Approx(closed).epsilon(1e-13));
  CHECK(dil[0].rhs == doctest::Approx(closed).epsilon(1e-13));

  const auto tr = covariance_E_samples(n, lambda, ConformalMap::translation({0.3, -1.1, 0.0}), f, {x});
  CHECK(tr[0].lhs == doctest::Approx(tr[0].rhs).epsilon(1e-14));
  CHECK_THROWS_AS(check_covariance_E(n, lambda, ConformalMap::translation({0, 0, 1.0}), f, {x}, 1e-9), DomainError);
}

TEST_CASE("covariance_E: inversion, n = 3, with a finite-difference spot check") {
  const int n = 3;
  const double lambda = 0.37;
  const ConformalMap g = ConformalMap::inversion(n);
  const TestFunction f = TestFunction::gaussian({0.3, 0.2, -0.5}, 1.2);
  Sampler s(11);
  const auto pts = points_for(s, g, n, 50, false);
  const auto r = check_covariance_E(n, lambda, g, f, pts, 1e-9);
  CHECK(r.passed);
  CHECK(r.samples == 50);

  const auto samples = covariance_E_samples(n, lambda, g, f, pts);
  const auto rho_value = [&](const std::vector<double>& p) { return rho(lambda, g, f, p, 0).value(); };
  for (int i = 0; i < 3; ++i) {
    const double fd = fd_E(n, lambda, rho_value, pts[i]);
    CHECK(samples[i].lhs == doctest::Approx(fd).epsilon(1e-6).scale(1e-3));
  }
  CHECK_THROWS_AS(check_covariance_E(n, lambda, g, f, {{0.0, 0.0, 0.0}}, 1e-9), SingularPoint);
}

TEST_CASE("covariance_EN: N = 1 matches covariance_E, dilation closes, inversion in n = 3") {
  const int n = 3;
  const TestFunction f = TestFunction::gaussian({0.1, 0.6, 0.2}, 0.8);
  const ConformalMap g = ConformalMap(n, {Inversion{}, Translation{{0.2, -0.3, 0.0}}});
  Sampler s(12);
  const auto pts = points_for(s, g, n, 20, true);
  const auto one = covariance_EN_samples(n, 1, 0.7, g, f, pts);
  const auto plain = covariance_E_samples(n, 0.7, g, f, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(one[i].lhs == doctest::Approx(plain[i].lhs).epsilon(1e-12));
    CHECK(one[i].rhs == doctest::Approx(plain[i].rhs).epsilon(1e-12));
  }
  const auto dil = covariance_EN_samples(n, 2, 0.7, ConformalMap::dilation(n, 0.6), f, {pts[0]});
  CHECK(dil[0].lhs == doctest::Approx(dil[0].rhs).epsilon(1e-12));
  CHECK(check_covariance_EN(n, 2, -0.45, ConformalMap::inversion(n), f, pts, 1e-8).passed);
  CHECK(check_covariance_EN(n, 3, 1.35, g, f, pts, 1e-8).passed);
  CHECK_THROWS_AS(check_covariance_EN(n, 5, 0.7, g, f, pts, 1e-8), DomainError);
  CHECK_THROWS_AS(check_covariance_EN(n, 2, 0.7, g, f, {{0.1, 0.2, 0.3}}, 1e-8), DomainError);
}

TEST_CASE("knapp_stein: J_1 of a Gaussian at lambda = 1 is 1") {
  const TestFunction f = TestFunction::gaussian({0.0}, 1.0);
  const auto u = [&f](const std::vector<double>& eta) { return f(eta); };
  for (double xi : {-0.8, 0.0, 1.9}) {
    const std::vector<double> p{xi};
    CHECK(std::abs(knapp_stein(1, 1.0, u, p, std::abs(xi) + 7.0, 1e-11) - 1.0) <= 1e-8);
  }
  CHECK_THROWS_AS(knapp_stein(1, 0.4, u, std::vector<double>{0.0}, 5.0, 1e-6), DomainError);
  CHECK_THROWS_AS(knapp_stein(3, 2.0, u, std::vector<double>{0.0, 0.0, 0.0}, 5.0, 1e-6), DomainError);
}

TEST_CASE("knapp_stein: intertwining by quadrature") {
  const TestFunction f2 = TestFunction::gaussian({0.3, -0.2}, 0.8);
  const std::vector<std::vector<double>> pts{{0.0, 0.0}, {0.5, -0.4}, {-1.2, 0.3}, {0.9, 1.1}, {-0.3, -1.4}};
  const auto id = knapp_stein_samples(2, 1.3, ConformalMap::identity(2), f2, pts, {});
  for (const auto& s : id) CHECK(s.lhs == s.rhs);

  const ConformalMap d2 = ConformalMap::dilation(2, 2.0);
  const auto r = check_KS_intertwine(2, 1.3, d2, f2, pts, 1e-5);
  CHECK(r.passed);

  const auto base = knapp_stein_samples(2, 1.3, d2, f2, pts, {});
  const auto wide = knapp_stein_samples(2, 1.3, d2, f2, pts, {1e-6, 2.0});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(base[i].lhs - wide[i].lhs) <= 1e-6 * std::abs(base[i].lhs));
    CHECK(std::abs(base[i].rhs - wide[i].rhs) <= 1e-6 * std::abs(base[i].rhs));
  }

  const TestFunction f1 = TestFunction::gaussian({0.4}, 1.5);
  const ConformalMap t1 = ConformalMap::translation({0.7});
  CHECK(check_KS_intertwine(1, 0.8, t1, f1, {{0.0}, {1.0}, {-2.0}}, 1e-5).passed);
  CHECK_THROWS_AS(check_KS_intertwine(1, 0.8, ConformalMap::inversion(1), f1, {{1.0}}, 1e-5), DomainError);
}

TEST_CASE("hs pairing against the closed form") {
  CHECK(check_hs_fourier_pairing(1, -0.5, 1e-8).passed);
  CHECK(check_hs_fourier_pairing(2, -1.0, 1e-8).passed);
  CHECK(check_hs_fourier_pairing(3, -1.5, 1e-8).passed);
  CHECK(check_hs_fourier_pairing(2, -0.01, 1e-8).passed);
  CHECK_THROWS_AS(check_hs_fourier_pairing(2, 0.5, 1e-8), DomainError);
  CHECK_THROWS_AS(check_hs_fourier_pairing(2, -2.0, 1e-8), DomainError);
}

TEST_CASE("B_mu on linear and quadratic functions") {
  const AmbientPoint p{1.3, {0.2, -0.5, 0.8}};
  const auto v = ambient_variables(p);
  const double mu = 0.35;
  CHECK(B_mu(mu, v[3], p) == doctest::Approx(-2 * mu));
  CHECK(B_mu(mu, v[3] * v[3], p) == doctest::Approx(-2 * (2 * mu + 1) * 0.8));
  CHECK(box(v[0] * v[0] - v[1] * v[1]) == doctest::Approx(4.0));
  CHECK(p.Q() == doctest::Approx(1.69 - 0.04 - 0.25 - 0.64));
}

TEST_CASE("ambient: noncompact chart, n = 3") {
  const TestFunction f = TestFunction::gaussian({0.2, -0.1, 0.4}, 1.1);
  Sampler s(13);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 30; ++i) pts.push_back(s.point(3, -1.5, 1.5));
  CHECK(check_ambient_noncompact(3, 0.8, f, pts, 1e-9).passed);
  CHECK_THROWS_AS(check_ambient_noncompact(3, 0.8, f, {{1e4, 0.0, 0.0}}, 1e-9), DomainError);
}

TEST_CASE("ambient: compact picture, n = 4, degree-2 polynomial") {
  Exponents a{}, b{}, c{};
  a[0] = 2;
  b[1] = 1;
  b[4] = 1;
  c[3] = 1;
  const TestFunction f = TestFunction::polynomial(5, {{0.7, a}, {-1.3, b}, {0.4, c}, {0.25, Exponents{}}});
  Sampler s(14);
  std::vector<std::vector<double>> pts;
  while (pts.size() < 20) {
    const auto x = s.unit_vector(5);
    if (std::abs(x[4]) > 0.1 && 1 + x[0] > 0.05) pts.push_back(x);
  }
  CHECK(check_ambient_compact(4, 1.2, f, pts, 1e-8).passed);
  CHECK_THROWS_AS(check_ambient_compact(4, 1.2, f, {{0.6, 0.0, 0.0, 0.8, 0.0}}, 1e-8), DomainError);
}

TEST_CASE("B_mu conjugation by |x_n|^mu and the Yamabe constant") {
  const TestFunction F = TestFunction::gaussian({0.1, 0.2, -0.3, 0.4, 0.0}, 1.4);
  Sampler s(15);
  std::vector<AmbientPoint> pts;
  while (pts.size() < 20) {
    AmbientPoint p{s.uniform(-2, 2), s.point(4, -2, 2)};
    if (std::abs(p.x.back()) > 0.1) pts.push_back(p);
  }
  for (double mu : {0.0, 1.0, -0.7, 2.3}) CHECK(check_cmu2(3, mu, F, pts, 1e-9).passed);
  const auto v = ambient_variables(pts[0]);
  const auto Fj = F(v);
  CHECK(B_mu(0.0, Fj, pts[0]) == doctest::Approx(pts[0].x.back() * box(Fj)).epsilon(1e-15));

  for (int n = 1; n <= 6; ++n) {
    std::vector<std::vector<double>> sp{s.unit_vector(n + 1), s.unit_vector(n + 1)};
    const auto r = check_yamabe_constant(n, sp, 1e-10);
    CHECK(r.passed);
  }
}

TEST_CASE("extension independence on the light cone") {
  const int n = 3;
  const TestFunction f = TestFunction::gaussian({0.5, -0.2, 0.1, 0.3}, 0.9);
  Sampler s(16);
  std::vector<AmbientPoint> cone;
  for (int i = 0; i < 20; ++i) {
    const double r = s.uniform(0.5, 2);
    auto y = s.unit_vector(n + 1);
    for (auto& c : y) c *= r;
    cone.push_back({r, y});
  }
  const auto same = check_extension_independence(n, f, Extension::TIndependent, Extension::TIndependent, cone, 1e-9);
  CHECK(same.max_rel_err == 0.0);
  CHECK(check_extension_independence(n, f, Extension::TIndependent, Extension::TDependent, cone, 1e-9).passed);
  CHECK(check_extension_independence(n, f, Extension::TDependent, Extension::PlusQG, cone, 1e-9).passed);
  CHECK_THROWS_AS(
      check_extension_independence(n, f, Extension::TIndependent, Extension::TDependent, {{1.0, {0.3, 0.1, 0.0, 0.2}}}, 1e-9),
      DomainError);
}

TEST_CASE("suites: every default report passes and runs are reproducible") {
  SuiteOptions opt;
  opt.suite = "all";
  const auto reports = run_suite(opt);
  print_failures(reports);
  for (const auto& r : reports) {
    CAPTURE(r.name);
    CHECK(r.passed);
  }
  SuiteOptions small;
  small.suite = "numeric";
  small.n_min = 1;
  small.n_max = 1;
  const auto a = run_suite(small), b = run_suite(small);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].max_rel_err == b[i].max_rel_err);
    CHECK(a[i].diagnostics == b[i].diagnostics);
  }
  small.seed = 7;
  CHECK(run_suite(small).size() == a.size());
}

TEST_CASE("suites: option validation") {
  SuiteOptions opt;
  opt.suite = "spectral";
  CHECK_THROWS_AS(run_suite(opt), std::invalid_argument);
  opt.suite = "ambient";
  opt.tolerances["no_such_check"] = 1e-3;
  CHECK_THROWS_AS(run_suite(opt), std::invalid_argument);
  opt.tolerances = {{"ambient", -1.0}};
  CHECK_THROWS_AS(run_suite(opt), std::invalid_argument);
  opt.tolerances = {{"yamabe", 1e-3}};
  opt.n_min = 5;
  opt.n_max = 5;
  const auto r = run_suite(opt);
  REQUIRE(r.size() == 1);
  CHECK(r[0].name == "yamabe/n=5");
  CHECK(r[0].tolerance == 1e-3);
  CHECK(is_known_suite("all"));
  CHECK_FALSE(is_known_suite("everything"));
}
