#include "covop/poly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "covop/errors.hpp"

namespace covop {

int total_degree(const Exponents& e) {
  int d = 0;
  for (auto k : e) d += k;
  return d;
}

namespace {

const std::shared_ptr<const std::vector<std::string>>& empty_names() {
  static const auto names = std::make_shared<const std::vector<std::string>>();
  return names;
}

std::uint8_t checked_exponent(int k) {
  if (k < 0 || k > 255) throw std::overflow_error("exponent out of range");
  return static_cast<std::uint8_t>(k);
}

}  // namespace

Variables::Variables() : names_(empty_names()) {}

Variables::Variables(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
  if (names_->size() > kMaxVariables) throw std::invalid_argument("too many variables");
}

std::size_t Variables::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  throw UnknownVariable("unknown variable '" + std::string(name) + "'");
}

bool Variables::contains(std::string_view name) const {
  return std::find(names_->begin(), names_->end(), name) != names_->end();
}

bool operator==(const Variables& a, const Variables& b) {
  return a.names_ == b.names_ || *a.names_ == *b.names_;
}

const Variables& lambda_variables() {
  static const Variables vars({"lambda"});
  return vars;
}

const Variables& lambda_xi_variables(int n) {
  if (n < 1 || n + 1 > static_cast<int>(kMaxVariables)) {
    throw std::invalid_argument("dimension out of supported range");
  }
  static std::mutex mutex;
  static std::map<int, Variables> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<std::string> names{"lambda"};
    for (int j = 1; j <= n; ++j) names.push_back("xi" + std::to_string(j));
    it = cache.emplace(n, Variables(std::move(names))).first;
  }
  return it->second;
}

Poly Poly::constant(const Variables& vars, const Rational& c) {
  Poly p(vars);
  p.add_term(Exponents{}, c);
  return p;
}

Poly Poly::variable(const Variables& vars, std::string_view name) {
  return variable(vars, vars.index_of(name));
}

Poly Poly::variable(const Variables& vars, std::size_t index) {
  if (index >= vars.size()) throw UnknownVariable("variable index out of range");
  Exponents e{};
  e[index] = 1;
  return monomial(vars, e, Rational(1));
}

Poly Poly::monomial(const Variables& vars, const Exponents& e, const Rational& c) {
  Poly p(vars);
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

Rational Poly::constant_term() const { return coefficient(Exponents{}); }

Rational Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, e[var]);
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, covop::total_degree(e));
  return d;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_same(const Poly& other) const {
  if (!(vars_ == other.vars_)) throw VariableMismatch("polynomials over different variable lists");
}

Poly& Poly::operator+=(const Poly& other) {
  check_same(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_same(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  Poly r(a.vars_);
  const std::size_t nv = a.vars_.size();
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e{};
      for (std::size_t i = 0; i < nv; ++i) e[i] = checked_exponent(ea[i] + eb[i]);
      mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      r.add_term(e, prod);
    }
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(vars_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

Poly Poly::partial(std::size_t var) const {
  if (var >= vars_.size()) throw UnknownVariable("variable index out of range");
  Poly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.terms_.emplace(d, c * e[var]);
  }
  return r;
}

Poly Poly::partial(std::string_view name) const { return partial(vars_.index_of(name)); }

Poly Poly::partial(std::size_t var, unsigned k) const {
  if (var >= vars_.size()) throw UnknownVariable("variable index out of range");
  Poly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] < k) continue;
    Exponents d = e;
    d[var] = static_cast<std::uint8_t>(e[var] - k);
    // falling factorial e(e-1)...(e-k+1)
    Integer ff(1);
    for (unsigned i = 0; i < k; ++i) ff *= (e[var] - i);
    r.terms_.emplace(d, c * ff);
  }
  return r;
}

Poly Poly::evaluate(std::size_t var, const Rational& value) const {
  if (var >= vars_.size()) throw UnknownVariable("variable index out of range");
  Poly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[var] = 0;
    Rational v = c;
    if (e[var] > 0) {
      if (value == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), e[var]);
      mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), e[var]);
      v *= pw;
    }
    r.add_term(d, v);
  }
  return r;
}

Poly Poly::shift(std::size_t var, const Rational& s) const {
  if (var >= vars_.size()) throw UnknownVariable("variable index out of range");
  if (s == 0) return *this;
  // (x + s)^k = sum_i binom(k, i) s^(k-i) x^i
  Poly r(vars_);
  for (const auto& [e, c] : terms_) {
    const unsigned k = e[var];
    Rational spow = 1;
    std::vector<Rational> powers(k + 1);
    for (unsigned i = 0; i <= k; ++i) {
      powers[i] = spow;
      spow *= s;
    }
    for (unsigned i = 0; i <= k; ++i) {
      Exponents d = e;
      d[var] = static_cast<std::uint8_t>(i);
      r.add_term(d, c * Rational(binomial(k, i)) * powers[k - i]);
    }
  }
  return r;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const {
  check_same(value);
  if (var >= vars_.size()) throw UnknownVariable("variable index out of range");
  Poly r(vars_);
  const int deg = degree_in(var);
  std::vector<Poly> powers;
  powers.reserve(deg + 1);
  powers.push_back(constant(vars_, 1));
  for (int i = 1; i <= deg; ++i) powers.push_back(powers.back() * value);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    d[var] = 0;
    r += monomial(vars_, d, c) * powers[e[var]];
  }
  return r;
}

Poly Poly::rebase(const Variables& target) const {
  if (vars_ == target) return *this;
  std::vector<std::size_t> map(vars_.size(), kMaxVariables);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] != 0 && map[i] == kMaxVariables) map[i] = target.index_of(vars_.name(i));
    }
  }
  Poly r(target);
  for (const auto& [e, c] : terms_) {
    Exponents d{};
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] != 0) d[map[i]] = e[i];
    }
    r.add_term(d, c);
  }
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return covop::total_degree(a.first) > covop::total_degree(b.first) ||
           (covop::total_degree(a.first) == covop::total_degree(b.first) && a.first > b.first);
  });
  for (const auto& [e, c] : sorted) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = covop::total_degree(e) == 0;
    if (mag != 1 || unit) {
      out << covop::to_string(mag);
      if (!unit) out << "*";
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_factor) out << "*";
      first_factor = false;
      out << vars_.name(i);
      if (e[i] > 1) out << "^" << static_cast<int>(e[i]);
    }
  }
  return out.str();
}

}  // namespace covop
