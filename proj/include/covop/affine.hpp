#pragma once

#include <complex>
#include <string>

#include "covop/rational_function.hpp"

namespace covop {

// constant + lambda * λ with rational parts.
struct AffineLambda {
  Rational constant;
  Rational lambda;

  std::complex<double> at(std::complex<double> x) const;
  RationalFunction to_rf() const { return RationalFunction::affine(constant, lambda); }
  bool is_constant() const { return lambda == 0; }
  std::string to_string() const;

  AffineLambda& operator+=(const AffineLambda& o) {
    constant += o.constant;
    lambda += o.lambda;
    return *this;
  }
  friend AffineLambda operator+(AffineLambda a, const AffineLambda& b) { return a += b; }
  friend AffineLambda operator-(const AffineLambda& a) { return {-a.constant, -a.lambda}; }
  friend AffineLambda operator-(const AffineLambda& a, const AffineLambda& b) { return a + (-b); }
  friend AffineLambda operator*(const Rational& c, const AffineLambda& a) {
    return {c * a.constant, c * a.lambda};
  }
  friend bool operator==(const AffineLambda& a, const AffineLambda& b) {
    return a.constant == b.constant && a.lambda == b.lambda;
  }
  // Lexicographic on (constant, lambda); only used to order containers.
  friend bool operator<(const AffineLambda& a, const AffineLambda& b) {
    if (a.constant != b.constant) return a.constant < b.constant;
    return a.lambda < b.lambda;
  }
};

}  // namespace covop
