#include "covop/sampling.hpp"

#include <cmath>

namespace covop {

std::uint64_t Sampler::derive(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  // splitmix64 finaliser
  h += 0x9e3779b97f4a7c15ULL;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
  return h ^ (h >> 31);
}

double Sampler::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

double Sampler::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

int Sampler::index(int k) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(k)); }

std::vector<double> Sampler::point(int n, double a, double b) {
  std::vector<double> x(n);
  for (auto& v : x) v = uniform(a, b);
  return x;
}

std::vector<double> Sampler::unit_vector(int n) {
  std::vector<double> x(n);
  double s = 0;
  do {
    s = 0;
    for (auto& v : x) {
      v = normal();
      s += v * v;
    }
  } while (s < 1e-12);
  for (auto& v : x) v /= std::sqrt(s);
  return x;
}

Eigen::MatrixXd Sampler::rotation(int n) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

Eigen::MatrixXd Sampler::tangential_rotation(int n) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n, n);
  if (n >= 2) R.topLeftCorner(n - 1, n - 1) = rotation(n - 1);
  return R;
}

Generator Sampler::generator(int n, Kind kind, bool tangential) {
  switch (kind) {
    case kTranslation: {
      auto v = point(n, -1.0, 1.0);
      if (tangential) v.back() = 0.0;
      return Translation{v};
    }
    case kRotation:
      return Rotation{tangential ? tangential_rotation(n) : rotation(n)};
    case kDilation:
      return Dilation{std::exp(uniform(-0.7, 0.7))};
    default:
      return Inversion{};
  }
}

ConformalMap Sampler::word(int n, int max_len, bool tangential) {
  const int len = 1 + index(max_len);
  std::vector<Generator> w;
  for (int i = 0; i < len; ++i) w.push_back(generator(n, static_cast<Kind>(index(4)), tangential));
  return ConformalMap(n, std::move(w));
}

TestFunction Sampler::gaussian(int n) {
  auto c = point(n, -1.0, 1.0);
  return TestFunction::gaussian(std::move(c), uniform(0.5, 2.0));
}

}  // namespace covop
