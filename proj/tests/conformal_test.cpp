#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "covop/conformal.hpp"

using namespace covop;

namespace {

std::vector<double> rand_point(std::mt19937_64& rng, int n, double scale = 1.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

double norm(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

Eigen::MatrixXd plane_rotation(int n, int i, int j, double angle) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n, n);
  R(i, i) = std::cos(angle);
  R(j, j) = std::cos(angle);
  R(i, j) = -std::sin(angle);
  R(j, i) = std::sin(angle);
  return R;
}

ConformalMap sample_word(std::mt19937_64& rng, int n, bool tangential) {
  std::uniform_int_distribution<int> kind(0, 3), len(1, 3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Generator> w;
  const int k = len(rng);
  for (int i = 0; i < k; ++i) {
    switch (kind(rng)) {
      case 0: {
        auto v = rand_point(rng, n, 1.0);
        if (tangential) v.back() = 0;
        w.push_back(Translation{v});
        break;
      }
      case 1:
        if (n >= 3 || (!tangential && n == 2)) w.push_back(Rotation{plane_rotation(n, 0, tangential ? n - 2 : n - 1, 3 * u(rng))});
        break;
      case 2:
        w.push_back(Dilation{std::exp(u(rng))});
        break;
      default:
        w.push_back(Inversion{});
    }
  }
  return ConformalMap(n, w);
}

}  // namespace

TEST_CASE("act: examples") {
  const std::vector<double> e1{1, 0, 0};
  CHECK(ConformalMap::dilation(3, 2).act(e1) == std::vector<double>{2, 0, 0});
  const auto s = ConformalMap::inversion(3).act(e1);
  CHECK(s == std::vector<double>{-1, 0, 0});
  const std::vector<double> x{0.3, -1.2, 0.7};
  const auto back = (ConformalMap::inversion(3) * ConformalMap::inversion(3)).act(x);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-15));
  CHECK_THROWS_AS(ConformalMap::inversion(3).act(std::vector<double>{0, 0, 0}), SingularPoint);
}

TEST_CASE("word order: word[0] acts first") {
  const ConformalMap g(2, {Translation{{1, 0}}, Dilation{2}});
  CHECK(g.act(std::vector<double>{0, 1}) == std::vector<double>{2, 2});
  CHECK(g.inverse().act(std::vector<double>{2, 2}) == std::vector<double>{0, 1});
  CHECK((ConformalMap::dilation(2, 2) * ConformalMap::translation({1, 0})).act(std::vector<double>{0, 1}) ==
        std::vector<double>{2, 2});
}

TEST_CASE("generator validation") {
  Eigen::MatrixXd reflect = Eigen::MatrixXd::Identity(2, 2);
  reflect(0, 0) = -1;
  CHECK_THROWS_AS(ConformalMap::rotation(reflect), DomainError);
  CHECK_THROWS_AS(ConformalMap::rotation(2 * Eigen::MatrixXd::Identity(2, 2)), DomainError);
  CHECK_THROWS_AS(ConformalMap::dilation(2, -1), DomainError);
  CHECK_THROWS_AS(ConformalMap(3, {Translation{{1, 0}}}), DimensionMismatch);
  CHECK(ConformalMap::translation({1, 0, 0}).preserves_hyperplane());
  CHECK_FALSE(ConformalMap::translation({0, 0, 1}).preserves_hyperplane());
  CHECK(ConformalMap::rotation(plane_rotation(3, 0, 1, 0.4)).preserves_hyperplane());
  CHECK_FALSE(ConformalMap::rotation(plane_rotation(3, 1, 2, 0.4)).preserves_hyperplane());
}

TEST_CASE("kappa: examples") {
  CHECK(ConformalMap::dilation(3, 2.5).kappa(std::vector<double>{0.1, 4, 2}) == doctest::Approx(2.5));
  CHECK(ConformalMap::inversion(3).kappa(std::vector<double>{0, 2, 0}) == doctest::Approx(0.25).epsilon(1e-15));
  const ConformalMap g = ConformalMap::dilation(3, 2) * ConformalMap::inversion(3);
  CHECK(g.kappa(std::vector<double>{0.6, 0, 0.8}) == doctest::Approx(2.0).epsilon(1e-15));
  // jet oracle for the inversion at |xi| = 2
  const std::vector<double> x{0, 2, 0};
  const Eigen::MatrixXd J = jacobian(ConformalMap::inversion(3), x);
  const Eigen::Vector3d eta(0.3, -0.4, 1.2);
  CHECK((J * eta).norm() / eta.norm() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("cocycle, jet oracle and hyperplane covariance on random words") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const ConformalMap g1 = sample_word(rng, n, true), g2 = sample_word(rng, n, true);
    const auto x = rand_point(rng, n);
    const ConformalMap g = g1 * g2;
    if (g.min_inversion_radius(x) < 0.05) continue;
    const double lhs = g.kappa(x);
    const double rhs = g1.kappa(g2.act(x)) * g2.kappa(x);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));

    const Eigen::MatrixXd J = jacobian(g, x);
    Eigen::VectorXd eta = Eigen::VectorXd::Random(n);
    eta.normalize();
    CHECK(std::abs((J * eta).norm() - lhs) <= 1e-10 * lhs);

    const auto y = g.act(x);
    CHECK(std::abs(y.back() - lhs * x.back()) <= 1e-12 * std::max(1.0, std::abs(y.back())));
  }
}

TEST_CASE("chart_c and kappa_c: examples and identities") {
  const auto c0 = chart_c(std::vector<double>{0, 0, 0});
  CHECK(c0 == std::vector<double>{1, 0, 0, 0});
  const auto c1 = chart_c(std::vector<double>{1, 0, 0});
  CHECK(c1[0] == doctest::Approx(0.0));
  CHECK(c1[1] == doctest::Approx(1.0));
  const auto far = chart_c(std::vector<double>{3e4, -4e4, 0});
  CHECK(far[0] == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(kappa_c(std::vector<double>{0, 0}) == 2.0);
  CHECK(kappa_c(std::vector<double>{0.6, 0.8}) == doctest::Approx(1.0));

  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const auto xi = rand_point(rng, n, 2.0), eta = rand_point(rng, n, 2.0);
    const auto cx = chart_c(xi), ce = chart_c(eta);
    CHECK(std::abs(norm(cx) - 1.0) < 1e-14);
    double lhs = 0, d = 0;
    for (int i = 0; i <= n; ++i) lhs += (cx[i] - ce[i]) * (cx[i] - ce[i]);
    for (int i = 0; i < n; ++i) d += (xi[i] - eta[i]) * (xi[i] - eta[i]);
    const double rhs = kappa_c(xi) * d * kappa_c(eta);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(lhs, 1e-3));

    const Eigen::MatrixXd J = chart_jacobian(xi);
    Eigen::VectorXd v = Eigen::VectorXd::Random(n);
    CHECK(std::abs((J * v).norm() - kappa_c(xi) * v.norm()) <= 1e-10 * v.norm());
  }
}

TEST_CASE("jets: derivatives of elementary compositions") {
  const std::vector<double> p{0.4, -0.7};
  const auto x = Jet<double>::variables(p, 3);
  const auto f = exp(x[0] * x[1]) * sqrt(x[0] * x[0] + 1.0) / (x[1] - 2.0) + log(x[0] + 3.0) * pow(x[0] + 2.0, -0.3);
  // oracle: closed form derivatives computed by hand for each piece
  const double a = p[0], b = p[1];
  const double E = std::exp(a * b), s = std::sqrt(a * a + 1), q = b - 2;
  const double value = E * s / q + std::log(a + 3) * std::pow(a + 2, -0.3);
  CHECK(f.value() == doctest::Approx(value).epsilon(1e-14));
  const double dfdb = (a * E * s) / q - E * s / (q * q);
  CHECK(f.grad(1) == doctest::Approx(dfdb).epsilon(1e-13));
  // d^2/db^2
  const double d2 = a * a * E * s / q - 2 * a * E * s / (q * q) + 2 * E * s / (q * q * q);
  CHECK(f.hess(1, 1) == doctest::Approx(d2).epsilon(1e-13));
  Exponents e3{};
  e3[1] = 3;
  const double d3 = a * a * a * E * s / q - 3 * a * a * E * s / (q * q) + 6 * a * E * s / (q * q * q) -
                    6 * E * s / (q * q * q * q);
  CHECK(f.derivative(e3) == doctest::Approx(d3).epsilon(1e-12));
}

TEST_CASE("rho: examples") {
  const TestFunction f = TestFunction::gaussian({1, 0, 0.5}, 0.8);
  const std::vector<double> xi{0.3, 0.2, -0.4};
  const Jet2 id = rho(1.7, ConformalMap::identity(3), f, xi);
  const Jet2 direct = f(jet2_variables(xi));
  for (std::size_t k = 0; k < id.coefficients().size(); ++k) CHECK(id.coefficients()[k] == doctest::Approx(direct.coefficients()[k]));

  const double r = 1.8, lambda = 0.6;
  const double expected = std::pow(r, -lambda) * f(std::vector<double>{xi[0] / r, xi[1] / r, xi[2] / r});
  CHECK(rho(lambda, ConformalMap::dilation(3, r), f, xi).value() == doctest::Approx(expected).epsilon(1e-14));

  const TestFunction g = TestFunction::gaussian({1, 0, 0}, 1.0);
  const std::vector<double> e1{1, 0, 0};
  CHECK(rho(2.0, ConformalMap::inversion(3), g, e1).value() ==
        doctest::Approx(g(std::vector<double>{-1, 0, 0})).epsilon(1e-15));
}

TEST_CASE("rho_prime: examples and restriction consistency") {
  const TestFunction fp = TestFunction::gaussian({0.2, -0.1}, 0.9);
  const std::vector<double> xp{0.5, 0.1};
  CHECK(rho_prime(1.3, ConformalMap::identity(3), fp, xp).value() == doctest::Approx(fp(xp)));
  const double r = 0.7;
  CHECK(rho_prime(1.3, ConformalMap::dilation(3, r), fp, xp).value() ==
        doctest::Approx(std::pow(r, -1.3) * fp(std::vector<double>{xp[0] / r, xp[1] / r})).epsilon(1e-14));

  std::mt19937_64 rng(33);
  const TestFunction f = TestFunction::gaussian({0.3, -0.2, 0.4}, 1.1);
  const TestFunction rf = f.restrict_last();
  for (int trial = 0; trial < 30; ++trial) {
    const ConformalMap g = sample_word(rng, 3, true);
    auto x = rand_point(rng, 3);
    x.back() = 0;
    if (g.min_inversion_radius(x) < 0.05 || g.inverse().min_inversion_radius(x) < 0.05) continue;
    const std::vector<double> xp(x.begin(), x.end() - 1);
    const double a = rho(0.8, g, f, x).value();
    const double b = rho_prime(0.8, g, rf, xp).value();
    CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), 1e-12));
  }
}

TEST_CASE("M intertwines rho_lambda and rho_{lambda-1}") {
  std::mt19937_64 rng(34);
  const TestFunction f = TestFunction::gaussian({0.1, 0.5, -0.3}, 0.7);
  const TestFunction xf = f.times_coordinate(2);
  for (int trial = 0; trial < 40; ++trial) {
    const ConformalMap g = sample_word(rng, 3, true);
    const auto x = rand_point(rng, 3);
    if (g.inverse().min_inversion_radius(x) < 0.05) continue;
    const double lhs = x[2] * rho(1.4, g, f, x, 0).value();
    const double rhs = rho(0.4, g, xf, x, 0).value();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), 1e-12));
  }
}

TEST_CASE("test functions") {
  const TestFunction f = TestFunction::gaussian({1, 2}, 0.5, 3.0).with_prefactor({{2.0, Exponents{1, 1}}});
  const std::vector<double> x{0.5, 1.5};
  CHECK(f(x) == doctest::Approx(3.0 * 2 * 0.75 * std::exp(-(0.25 + 0.25) / 0.5)));
  const TestFunction r = TestFunction::gaussian({1, 2}, 0.5).restrict_last();
  CHECK(r(std::vector<double>{0.5}) == doctest::Approx(std::exp(-(0.25 + 4) / 0.5)));
  CHECK(TestFunction::polynomial(2, {{1.0, Exponents{0, 2}}}).restrict_last()(std::vector<double>{3.0}) == 0.0);
  CHECK(f.decay_radius(1e-12) > 3.0);
}
