#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "covop/conformal.hpp"

namespace covop {

// Seeded sampling for the verification suites. Only the raw mt19937_64 stream is
// used, so draws are identical across standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  // Independent stream for a named check.
  static std::uint64_t derive(std::uint64_t seed, std::string_view label);

  double uniform();  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double normal();
  int index(int k);  // [0, k)
  std::vector<double> point(int n, double a, double b);
  std::vector<double> unit_vector(int n);

  Eigen::MatrixXd rotation(int n);             // Haar distributed in SO(n)
  Eigen::MatrixXd tangential_rotation(int n);  // SO(n-1) block, fixing e_n

  enum Kind { kTranslation = 0, kRotation = 1, kDilation = 2, kInversion = 3 };
  Generator generator(int n, Kind kind, bool tangential);
  // Word of 1..max_len random generators.
  ConformalMap word(int n, int max_len, bool tangential);

  // Gaussian bump with centre in [-1, 1]^n and width in [0.5, 2].
  TestFunction gaussian(int n);

 private:
  std::mt19937_64 rng_;
};

}  // namespace covop
