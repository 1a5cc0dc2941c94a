#include "covop/diffop.hpp"

#include <sstream>

#include "covop/errors.hpp"

namespace covop {

MultiIndex unit_index(int j, int power) {
  MultiIndex a{};
  a[j - 1] = static_cast<std::uint8_t>(power);
  return a;
}

DiffOp::DiffOp(int n) : n_(n) {
  if (n < 1 || n + 1 > static_cast<int>(kMaxVariables)) {
    throw std::invalid_argument("dimension out of supported range");
  }
}

DiffOp DiffOp::identity(int n) {
  return multiplication(n, Poly::constant(lambda_xi_variables(n), 1));
}

DiffOp DiffOp::multiplication(int n, const Poly& p) { return derivative(n, MultiIndex{}, p); }

DiffOp DiffOp::derivative(int n, const MultiIndex& alpha, const Poly& coeff) {
  DiffOp d(n);
  d.add_term(alpha, coeff);
  return d;
}

DiffOp DiffOp::laplacian(int n) {
  DiffOp d(n);
  const Poly one = Poly::constant(lambda_xi_variables(n), 1);
  for (int j = 1; j <= n; ++j) d.add_term(unit_index(j, 2), one);
  return d;
}

DiffOp DiffOp::tangential_laplacian(int n) {
  DiffOp d(n);
  const Poly one = Poly::constant(lambda_xi_variables(n), 1);
  for (int j = 1; j < n; ++j) d.add_term(unit_index(j, 2), one);
  return d;
}

int DiffOp::order() const {
  int o = 0;
  for (const auto& [alpha, c] : terms_) o = std::max(o, total_degree(alpha));
  return o;
}

Poly DiffOp::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Poly(variables()) : it->second;
}

void DiffOp::add_term(const MultiIndex& alpha, const Poly& coeff) {
  if (!(coeff.variables() == variables())) {
    throw VariableMismatch("operator coefficient over the wrong variable list");
  }
  for (int i = n_; i < static_cast<int>(kMaxVariables); ++i) {
    if (alpha[i] != 0) throw DimensionMismatch("multi-index longer than the dimension");
  }
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  if (o.n_ != n_) throw DimensionMismatch("operators on different dimensions");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  if (o.n_ != n_) throw DimensionMismatch("operators on different dimensions");
  for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
  return *this;
}

DiffOp operator*(const Rational& c, DiffOp a) {
  if (c == 0) return DiffOp(a.n_);
  for (auto& [alpha, p] : a.terms_) p *= c;
  return a;
}

DiffOp DiffOp::shift_lambda(const Rational& c) const {
  DiffOp r(n_);
  for (const auto& [alpha, p] : terms_) r.add_term(alpha, p.shift(0, c));
  return r;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [alpha, p] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << p.to_string() << ")";
    for (int j = 1; j <= n_; ++j) {
      if (alpha[j - 1] == 0) continue;
      out << "*d" << j;
      if (alpha[j - 1] > 1) out << "^" << static_cast<int>(alpha[j - 1]);
    }
  }
  return out.str();
}

namespace {

// Enumerates gamma <= alpha (componentwise) and calls f(gamma, prod binom(alpha_i, gamma_i)).
template <class F>
void for_each_subindex(const MultiIndex& alpha, int n, F&& f) {
  MultiIndex gamma{};
  while (true) {
    Integer weight(1);
    for (int i = 0; i < n; ++i) weight *= binomial(alpha[i], gamma[i]);
    f(gamma, weight);
    int i = 0;
    for (; i < n; ++i) {
      if (gamma[i] < alpha[i]) {
        ++gamma[i];
        break;
      }
      gamma[i] = 0;
    }
    if (i == n) return;
  }
}

Poly derivative_of(const Poly& q, const MultiIndex& gamma, int n) {
  Poly r = q;
  for (int j = 1; j <= n && !r.is_zero(); ++j) {
    if (gamma[j - 1] > 0) r = r.partial(static_cast<std::size_t>(j), gamma[j - 1]);
  }
  return r;
}

}  // namespace

DiffOp compose(const DiffOp& outer, const DiffOp& inner) {
  const int n = outer.dimension();
  if (inner.dimension() != n) throw DimensionMismatch("composing operators on different dimensions");
  DiffOp result(n);
  for (const auto& [alpha, p] : outer.terms()) {
    for (const auto& [beta, q] : inner.terms()) {
      for_each_subindex(alpha, n, [&](const MultiIndex& gamma, const Integer& weight) {
        Poly dq = derivative_of(q, gamma, n);
        if (dq.is_zero()) return;
        MultiIndex target{};
        for (int i = 0; i < n; ++i) {
          target[i] = static_cast<std::uint8_t>(alpha[i] - gamma[i] + beta[i]);
        }
        Poly coeff = p * dq;
        if (weight != 1) coeff *= Rational(weight);
        result.add_term(target, coeff);
      });
    }
  }
  return result;
}

Poly apply(const DiffOp& d, const Poly& p) {
  if (!(p.variables() == d.variables())) {
    throw DimensionMismatch("polynomial and operator over different variables");
  }
  Poly r(d.variables());
  for (const auto& [alpha, c] : d.terms()) {
    Poly dp = derivative_of(p, alpha, d.dimension());
    if (!dp.is_zero()) r += c * dp;
  }
  return r;
}

DiffOp restrict_to_hyperplane(const DiffOp& d) {
  DiffOp r(d.dimension());
  const auto xi_n = static_cast<std::size_t>(d.dimension());
  for (const auto& [alpha, c] : d.terms()) r.add_term(alpha, c.evaluate(xi_n, 0));
  return r;
}

DiffOp TangentialOp::to_diffop() const {
  DiffOp result(n);
  const DiffOp lap = DiffOp::tangential_laplacian(n);
  DiffOp lap_power = DiffOp::identity(n);
  const Variables& vars = lambda_xi_variables(n);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (!coeffs[j].is_polynomial()) {
      throw std::domain_error("tangential coefficient is not polynomial in lambda");
    }
    const int normal = N - 2 * static_cast<int>(j);
    DiffOp normal_part =
        DiffOp::derivative(n, unit_index(n, normal), coeffs[j].numerator().rebase(vars));
    result += compose(normal_part, lap_power);
    lap_power = compose(lap, lap_power);
  }
  return result;
}

namespace {

// All beta in N^m with |beta| = k.
void compositions(int m, int k, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (m == 0) {
    if (k == 0) out.push_back(current);
    return;
  }
  if (m == 1) {
    current.push_back(k);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int i = 0; i <= k; ++i) {
    current.push_back(i);
    compositions(m - 1, k - i, current, out);
    current.pop_back();
  }
}

}  // namespace

TangentialOp decompose_tangential(const DiffOp& restricted, int N) {
  const int n = restricted.dimension();
  if (N < 0) throw std::invalid_argument("negative order");
  // Symbol coefficients, each a polynomial in lambda alone.
  std::map<MultiIndex, upoly::Coeffs> symbol;
  for (const auto& [alpha, c] : restricted.terms()) {
    for (int j = 1; j <= n; ++j) {
      if (c.depends_on(static_cast<std::size_t>(j))) {
        throw NonTangentialForm("restricted coefficient depends on xi" + std::to_string(j));
      }
    }
    symbol[alpha] = upoly::from_poly(c);
  }

  TangentialOp result{n, N, {}};
  const int jmax = N / 2;
  for (int j = 0; j <= jmax; ++j) {
    if (n == 1 && j > 0) {
      // |eta'|^{2j} vanishes identically when there are no tangential directions.
      result.coeffs.emplace_back();
      continue;
    }
    MultiIndex probe{};
    probe[n - 1] = static_cast<std::uint8_t>(N - 2 * j);
    if (j > 0) probe[0] = static_cast<std::uint8_t>(2 * j);
    auto it = symbol.find(probe);
    result.coeffs.emplace_back(upoly::to_poly(it == symbol.end() ? upoly::Coeffs{} : it->second));
  }

  // Residual sigma - sum_j a_j eta_n^{N-2j} |eta'|^{2j}, |eta'|^{2j} expanded multinomially.
  for (int j = 0; j <= jmax; ++j) {
    if (n == 1 && j > 0) continue;
    const upoly::Coeffs aj = upoly::from_poly(result.coeffs[j].numerator());
    std::vector<std::vector<int>> betas;
    std::vector<int> scratch;
    compositions(n - 1, j, scratch, betas);
    for (const auto& beta : betas) {
      Integer weight = factorial(static_cast<unsigned>(j));
      MultiIndex alpha{};
      for (int i = 0; i < n - 1; ++i) {
        weight /= factorial(static_cast<unsigned>(beta[i]));
        alpha[i] = static_cast<std::uint8_t>(2 * beta[i]);
      }
      alpha[n - 1] = static_cast<std::uint8_t>(N - 2 * j);
      upoly::Coeffs scaled = aj;
      for (auto& c : scaled) c *= Rational(weight);
      symbol[alpha] = upoly::sub(symbol[alpha], scaled);
    }
  }
  for (const auto& [alpha, c] : symbol) {
    if (!c.empty()) {
      std::ostringstream msg;
      msg << "residual term of order " << total_degree(alpha) << " does not vanish";
      throw NonTangentialForm(msg.str());
    }
  }
  return result;
}

}  // namespace covop
