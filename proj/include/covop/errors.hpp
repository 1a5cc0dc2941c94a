#pragma once

#include <stdexcept>
#include <string>

namespace covop {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two polynomials (or a polynomial and an operator) over different variable lists.
class VariableMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A restricted operator is not of the form sum_j a_j d_n^{N-2j} Lap'^j.
class NonTangentialForm : public Error {
 public:
  using Error::Error;
};

// A Gamma factor (or a kernel normalisation) has a pole at the requested lambda.
class PoleAtLambda : public Error {
 public:
  using Error::Error;
};

// d/d eta_n would need a second normal derivative of the Fourier target.
class ClosureExceeded : public Error {
 public:
  using Error::Error;
};

// Transcendental parts of two symbol coefficients cannot be merged.
class IncommensurableCoefficients : public Error {
 public:
  using Error::Error;
};

// An inversion was evaluated at (or numerically next to) the origin.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

class QuadratureBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A sample lies outside the region where a check is defined
// (chart domain, |x_n| locus, admissible s range, homogeneity).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace covop
