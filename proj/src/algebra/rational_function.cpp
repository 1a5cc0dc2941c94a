#include "covop/rational_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covop/errors.hpp"

namespace covop {

namespace upoly {

void trim(Coeffs& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Coeffs sub(const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

void divmod(const Coeffs& a, const Coeffs& b, Coeffs& q, Coeffs& r) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational& lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    Rational factor = r.back() / lead;
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= factor * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

Coeffs gcd(Coeffs a, Coeffs b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Coeffs from_poly(const Poly& p) {
  Coeffs r;
  if (p.is_zero()) return r;
  const auto& vars = p.variables();
  const bool has_lambda = vars.contains("lambda");
  const std::size_t li = has_lambda ? vars.index_of("lambda") : 0;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (e[i] != 0 && (!has_lambda || i != li)) {
        throw VariableMismatch("polynomial depends on variables other than lambda");
      }
    }
    const std::size_t k = has_lambda ? e[li] : 0;
    if (r.size() <= k) r.resize(k + 1);
    r[k] += c;
  }
  trim(r);
  return r;
}

Poly to_poly(const Coeffs& c) {
  Poly p(lambda_variables());
  for (std::size_t k = 0; k < c.size(); ++k) {
    Exponents e{};
    e[0] = static_cast<std::uint8_t>(k);
    p.add_term(e, c[k]);
  }
  return p;
}

std::string to_string(const Coeffs& c, std::string_view var) {
  if (c.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    Rational mag = abs(c[k]);
    if (first) {
      if (c[k] < 0) out << "-";
    } else {
      out << (c[k] < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) out << covop::to_string(mag);
    if (k > 0) out << var;
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

}  // namespace upoly

RationalFunction::RationalFunction() : den_{Rational(1)} {}

RationalFunction::RationalFunction(const Rational& c) : den_{Rational(1)} {
  if (c != 0) num_.push_back(c);
}

RationalFunction::RationalFunction(const Poly& num, const Poly& den)
    : num_(upoly::from_poly(num)), den_(upoly::from_poly(den)) {
  if (den_.empty()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

RationalFunction::RationalFunction(const Poly& num) : num_(upoly::from_poly(num)), den_{Rational(1)} {}

RationalFunction RationalFunction::lambda() { return affine(0, 1); }

RationalFunction RationalFunction::affine(const Rational& c0, const Rational& c1) {
  RationalFunction r;
  r.num_ = {c0, c1};
  upoly::trim(r.num_);
  return r;
}

Poly RationalFunction::numerator() const { return upoly::to_poly(num_); }
Poly RationalFunction::denominator() const { return upoly::to_poly(den_); }

void RationalFunction::normalize() {
  upoly::trim(num_);
  upoly::trim(den_);
  if (num_.empty()) {
    den_ = {Rational(1)};
    return;
  }
  if (den_.size() > 1) {
    upoly::Coeffs g = upoly::gcd(num_, den_);
    if (g.size() > 1) {
      upoly::Coeffs q, r;
      upoly::divmod(num_, g, q, r);
      num_ = std::move(q);
      upoly::divmod(den_, g, q, r);
      den_ = std::move(q);
    }
  }
  Rational lead = den_.back();
  if (lead != 1) {
    for (auto& c : num_) c /= lead;
    for (auto& c : den_) c /= lead;
  }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (den_ == o.den_) {
    num_ = upoly::add(num_, o.num_);
  } else {
    num_ = upoly::add(upoly::mul(num_, o.den_), upoly::mul(o.num_, den_));
    den_ = upoly::mul(den_, o.den_);
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ = upoly::mul(num_, o.num_);
  den_ = upoly::mul(den_, o.den_);
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("division by the zero rational function");
  num_ = upoly::mul(num_, o.den_);
  den_ = upoly::mul(den_, o.num_);
  normalize();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return upoly::mul(a.num_, b.den_) == upoly::mul(b.num_, a.den_);
}

RationalFunction RationalFunction::shift(const Rational& c) const {
  RationalFunction r;
  r.num_ = upoly::from_poly(numerator().shift(0, c));
  r.den_ = upoly::from_poly(denominator().shift(0, c));
  r.normalize();
  return r;
}

std::complex<double> RationalFunction::evaluate(std::complex<double> x) const {
  auto horner = [&](const upoly::Coeffs& c) {
    std::complex<double> v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + to_double(c[k]);
    return v;
  };
  auto scale = [&](const upoly::Coeffs& c) {
    double s = 0;
    double ax = 1;
    for (const auto& ck : c) {
      s += std::abs(to_double(ck)) * ax;
      ax *= std::abs(x);
    }
    return s;
  };
  std::complex<double> d = horner(den_);
  if (std::abs(d) <= 1e-13 * scale(den_)) {
    throw PoleAtLambda("rational function evaluated at a pole");
  }
  return horner(num_) / d;
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) return upoly::to_string(num_);
  return "(" + upoly::to_string(num_) + ")/(" + upoly::to_string(den_) + ")";
}

}  // namespace covop
