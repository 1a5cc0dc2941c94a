#include "covop/symbol_calculus.hpp"

#include <cmath>
#include <sstream>

#include "covop/errors.hpp"
#include "covop/special.hpp"

namespace covop {

namespace {

long floor_of(const Rational& q) {
  Integer k;
  mpz_fdiv_q(k.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return k.get_si();
}

}  // namespace

SymCoeff::SymCoeff() = default;

SymCoeff::SymCoeff(const RationalFunction& rf) : rf_(rf) { normalize(); }

SymCoeff::SymCoeff(RationalFunction rf, AffineLambda two_exp, Rational pi_half_exp, int i_pow)
    : rf_(std::move(rf)), two_exp_(std::move(two_exp)), pi_half_exp_(std::move(pi_half_exp)), i_pow_(i_pow) {
  normalize();
}

SymCoeff SymCoeff::power_of_two(const AffineLambda& e) { return SymCoeff(Rational(1), e, 0, 0); }
SymCoeff SymCoeff::pi_half_power(const Rational& k) { return SymCoeff(Rational(1), {}, k, 0); }
SymCoeff SymCoeff::imaginary_unit() { return SymCoeff(Rational(1), {}, 0, 1); }

void SymCoeff::normalize() {
  if (rf_.is_zero()) {
    two_exp_ = {};
    pi_half_exp_ = 0;
    i_pow_ = 0;
    return;
  }
  i_pow_ = ((i_pow_ % 4) + 4) % 4;
  if (i_pow_ >= 2) {
    rf_ = -rf_;
    i_pow_ -= 2;
  }
  const long k = floor_of(two_exp_.constant);
  if (k != 0) {
    rf_ *= RationalFunction(covop::power_of_two(k));
    two_exp_.constant -= k;
  }
}

bool SymCoeff::commensurable_with(const SymCoeff& o) const {
  return two_exp_ == o.two_exp_ && pi_half_exp_ == o.pi_half_exp_ && i_pow_ == o.i_pow_;
}

SymCoeff& SymCoeff::operator+=(const SymCoeff& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (!commensurable_with(o)) {
    throw IncommensurableCoefficients("cannot add " + to_string() + " and " + o.to_string());
  }
  rf_ += o.rf_;
  normalize();
  return *this;
}

SymCoeff& SymCoeff::operator*=(const SymCoeff& o) {
  rf_ *= o.rf_;
  two_exp_ += o.two_exp_;
  pi_half_exp_ += o.pi_half_exp_;
  i_pow_ += o.i_pow_;
  normalize();
  return *this;
}

SymCoeff SymCoeff::operator-() const {
  SymCoeff c = *this;
  c.rf_ = -c.rf_;
  return c;
}

bool operator==(const SymCoeff& a, const SymCoeff& b) { return a.rf_ == b.rf_ && a.commensurable_with(b); }

std::complex<double> SymCoeff::evaluate(std::complex<double> lambda) const {
  if (is_zero()) return 0.0;
  std::complex<double> v = rf_.evaluate(lambda);
  v *= std::exp(two_exp_.at(lambda) * std::log(2.0));
  v *= std::pow(M_PI, 0.5 * to_double(pi_half_exp_));
  if (i_pow_ == 1) v *= std::complex<double>(0, 1);
  return v;
}

std::string SymCoeff::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  out << "(" << rf_.to_string() << ")";
  if (two_exp_.constant != 0 || two_exp_.lambda != 0) out << "·2^(" << two_exp_.to_string() << ")";
  if (pi_half_exp_ != 0) out << "·π^(" << covop::to_string(pi_half_exp_) << "/2)";
  if (i_pow_ == 1) out << "·i";
  return out.str();
}

HExpr HExpr::term(int n, const SymCoeff& c, int eta_n_pow, const AffineLambda& s, Target t) {
  HExpr e(n);
  e.add({c, eta_n_pow, s, t});
  return e;
}

std::vector<HTerm> HExpr::terms() const {
  std::vector<HTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) out.push_back({c, std::get<2>(key), std::get<1>(key), std::get<0>(key)});
  return out;
}

SymCoeff HExpr::coefficient(Target t, const AffineLambda& s, int eta_n_pow) const {
  auto it = terms_.find(Key{t, s, eta_n_pow});
  return it == terms_.end() ? SymCoeff() : it->second;
}

void HExpr::add(const HTerm& t) {
  if (t.coeff.is_zero()) return;
  if (t.eta_n_pow < 0) throw DomainError("negative power of eta_n");
  const Key key{t.target, t.s, t.eta_n_pow};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, t.coeff);
    return;
  }
  it->second += t.coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

HExpr& HExpr::operator+=(const HExpr& o) {
  if (o.n_ != n_) throw DimensionMismatch("HExpr dimensions differ");
  for (const auto& t : o.terms()) add(t);
  return *this;
}

HExpr& HExpr::operator-=(const HExpr& o) {
  if (o.n_ != n_) throw DimensionMismatch("HExpr dimensions differ");
  for (auto t : o.terms()) {
    t.coeff = -t.coeff;
    add(t);
  }
  return *this;
}

HExpr operator*(const SymCoeff& c, const HExpr& e) {
  HExpr out(e.n_);
  for (auto t : e.terms()) {
    t.coeff = c * t.coeff;
    out.add(t);
  }
  return out;
}

bool operator==(const HExpr& a, const HExpr& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

std::complex<double> HExpr::evaluate(std::complex<double> lambda, std::span<const double> eta,
                                     std::complex<double> fhat, std::complex<double> dfhat) const {
  if (eta.size() != static_cast<std::size_t>(n_)) throw DimensionMismatch("point has the wrong dimension");
  double norm_sq = 0;
  for (double x : eta) norm_sq += x * x;
  const double log_norm = 0.5 * std::log(norm_sq);
  std::complex<double> total = 0;
  for (const auto& t : terms()) {
    const std::complex<double> s = t.s.at(lambda);
    std::complex<double> v = t.coeff.evaluate(lambda) * std::pow(eta.back(), t.eta_n_pow);
    v *= std::exp(s * log_norm) * reciprocal_gamma(0.5 * static_cast<double>(n_) + 0.5 * s);
    total += v * (t.target == Target::Fhat ? fhat : dfhat);
  }
  return total;
}

std::string HExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms()) {
    if (!first) out << " + ";
    first = false;
    out << t.coeff.to_string();
    if (t.eta_n_pow == 1) out << "·η_n";
    else if (t.eta_n_pow > 1) out << "·η_n^" << t.eta_n_pow;
    out << "·h_{" << t.s.to_string() << "}" << (t.target == Target::Fhat ? "·f^" : "·∂_n f^");
  }
  return out.str();
}

HExpr fourier_of_h(const HExpr& e) {
  const int n = e.dimension();
  HExpr out(n);
  for (const auto& t : e.terms()) {
    if (t.eta_n_pow != 0) throw DomainError("fourier_of_h needs bare kernels h_s");
    const AffineLambda two = AffineLambda{Rational(n), 0} + t.s;
    const SymCoeff c = t.coeff * SymCoeff::power_of_two(two) * SymCoeff::pi_half_power(n);
    out.add({c, 0, AffineLambda{Rational(-n), 0} - t.s, t.target});
  }
  return out;
}

HExpr mul_eta_n(const HExpr& e) {
  HExpr out(e.dimension());
  for (auto t : e.terms()) {
    ++t.eta_n_pow;
    out.add(t);
  }
  return out;
}

HExpr mul_norm_sq(const HExpr& e) {
  const int n = e.dimension();
  HExpr out(n);
  for (auto t : e.terms()) {
    const AffineLambda factor = Rational(1, 2) * (AffineLambda{Rational(n), 0} + t.s);
    t.coeff = SymCoeff(factor.to_rf()) * t.coeff;
    t.s += AffineLambda{Rational(2), 0};
    out.add(t);
  }
  return out;
}

HExpr d_dn(const HExpr& e) {
  const int n = e.dimension();
  HExpr out(n);
  for (const auto& t : e.terms()) {
    if (t.target == Target::dFhat_dn) {
      throw ClosureExceeded("d/d eta_n of a term already carrying d f^/d eta_n");
    }
    if (t.eta_n_pow > 0) {
      out.add({SymCoeff(RationalFunction(Rational(t.eta_n_pow))) * t.coeff, t.eta_n_pow - 1, t.s, t.target});
    }
    const AffineLambda num = Rational(2) * t.s;
    const AffineLambda den = AffineLambda{Rational(n - 2), 0} + t.s;
    if (!(num == AffineLambda{})) {
      if (den == AffineLambda{}) {
        throw DomainError("d/d eta_n of h_{2-n}: the kernel rule needs analytic continuation in s");
      }
      out.add({SymCoeff(num.to_rf() / den.to_rf()) * t.coeff, t.eta_n_pow + 1, t.s - AffineLambda{Rational(2), 0},
               t.target});
    }
    out.add({t.coeff, t.eta_n_pow, t.s, Target::dFhat_dn});
  }
  return out;
}

HExpr retarget(const HExpr& e, Target target) {
  HExpr out(e.dimension());
  for (auto t : e.terms()) {
    t.target = target;
    out.add(t);
  }
  return out;
}

HExpr j_symbol(int n, int shift) {
  if (n < 1) throw std::invalid_argument("dimension must be at least 1");
  const AffineLambda s{Rational(-2 * n + 2 * shift), Rational(2)};
  return fourier_of_h(HExpr::term(n, SymCoeff(Rational(1)), 0, s, Target::Fhat));
}

namespace {

SymCoeff minus_i() { return SymCoeff(Rational(-1), {}, 0, 1); }

}  // namespace

HExpr symbol_MJ(int n) { return minus_i() * d_dn(j_symbol(n)); }

HExpr symbol_JE(int n) {
  const HExpr j1 = j_symbol(n, 1);
  const HExpr eta_j = mul_eta_n(j1);
  HExpr inner = SymCoeff(RationalFunction::affine(2 - n, 2)) * eta_j;
  // d_n(-|eta|^2 f^) = -2 eta_n f^ - |eta|^2 d_n f^
  inner -= SymCoeff(Rational(2)) * eta_j;
  inner -= mul_norm_sq(retarget(j1, Target::dFhat_dn));
  return minus_i() * inner;
}

HExpr symbol_MJ_closed_form(int n) {
  const SymCoeff c = minus_i() * SymCoeff::pi_half_power(n) * SymCoeff::power_of_two({Rational(-n), 2});
  HExpr e = HExpr::term(n, c, 0, {Rational(n), -2}, Target::dFhat_dn);
  const RationalFunction ratio = RationalFunction::affine(n, -2) / RationalFunction::affine(n - 1, -1);
  e += HExpr::term(n, SymCoeff(ratio) * c, 1, {Rational(n - 2), -2}, Target::Fhat);
  return e;
}

HExpr symbol_JE_closed_form(int n) {
  const SymCoeff c = minus_i() * SymCoeff::power_of_two({Rational(2 - n), 2}) * SymCoeff::pi_half_power(n);
  HExpr e = HExpr::term(n, SymCoeff(RationalFunction::affine(1 - n, 1)) * c, 0, {Rational(n), -2},
                        Target::dFhat_dn);
  e += HExpr::term(n, SymCoeff(RationalFunction::affine(-n, 2)) * c, 1, {Rational(n - 2), -2}, Target::Fhat);
  return e;
}

bool check_MI_with(int n, const RationalFunction& factor) {
  return symbol_MJ(n) == SymCoeff(factor) * symbol_JE(n);
}

bool check_MI(int n) {
  return check_MI_with(n, RationalFunction(Rational(1)) / RationalFunction::affine(4 - 4 * n, 4));
}

double inverseJ_max_rel_err(int n, std::span<const std::complex<double>> lambda_samples) {
  const HExpr j = j_symbol(n);
  // Two points of the unit sphere: the pole e_n and the normalised diagonal.
  std::vector<std::vector<double>> points{std::vector<double>(n, 0.0),
                                          std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)))};
  points[0].back() = 1.0;
  const double nd = static_cast<double>(n);
  double worst = 0;
  for (const auto lambda : lambda_samples) {
    if (near_gamma_pole(lambda) || near_gamma_pole(nd - lambda)) {
      throw PoleAtLambda("Gamma(λ) or Gamma(n-λ) has a pole at the requested sample");
    }
    const std::complex<double> rhs = std::pow(M_PI, nd) / (gamma(lambda) * gamma(nd - lambda));
    for (const auto& eta : points) {
      const std::complex<double> lhs = j.evaluate(lambda, eta, 1.0, 0.0) * j.evaluate(nd - lambda, eta, 1.0, 0.0);
      const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
      worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
  }
  return worst;
}

bool check_inverseJ(int n, std::span<const std::complex<double>> lambda_samples, double tol) {
  return inverseJ_max_rel_err(n, lambda_samples) <= tol;
}

}  // namespace covop
