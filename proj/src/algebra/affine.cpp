#include "covop/affine.hpp"

#include <sstream>

namespace covop {

std::complex<double> AffineLambda::at(std::complex<double> x) const {
  return to_double(constant) + to_double(lambda) * x;
}

std::string AffineLambda::to_string() const {
  std::ostringstream out;
  if (lambda != 0) {
    if (lambda == -1) out << "-";
    else if (lambda != 1) out << covop::to_string(lambda);
    out << "λ";
  }
  if (constant != 0 || lambda == 0) {
    if (lambda != 0) out << (constant < 0 ? " - " : " + ") << covop::to_string(abs(constant));
    else out << covop::to_string(constant);
  }
  return out.str();
}

}  // namespace covop
