#include <map>
#include <mutex>

#include "covop/juhl.hpp"
#include "covop/verify.hpp"

namespace covop {

namespace {

const DiffOp& restricted_EN(int n, int N) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, DiffOp> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({n, N});
  if (it == cache.end()) it = cache.emplace(std::pair{n, N}, restrict_to_hyperplane(build_EN(n, N))).first;
  return it->second;
}

void require_tangential(const ConformalMap& g) {
  if (!g.preserves_hyperplane()) throw DomainError("the map must preserve the hyperplane xi_n = 0");
}

std::string where(const ConformalMap& g, std::span<const double> x) {
  return g.to_string() + " at " + describe_point(x);
}

}  // namespace

std::vector<Sample> covariance_E_samples(int n, double lambda, const ConformalMap& g, const TestFunction& f,
                                         const std::vector<std::vector<double>>& points) {
  require_tangential(g);
  const DiffOp e = build_E(n);
  const ConformalMap ginv = g.inverse();
  std::vector<Sample> out;
  for (const auto& x : points) {
    const double lhs = apply_at(e, lambda, rho(lambda, g, f, x, 2), x);
    const auto y = ginv.act(x);
    const double k = ginv.kappa(x);
    const double rhs = std::pow(k, lambda + 1) * apply_at(e, lambda, f(Jet<double>::variables(y, 2)), y);
    out.push_back({lhs, rhs, where(g, x)});
  }
  return out;
}

CheckReport check_covariance_E(int n, double lambda, const ConformalMap& g, const TestFunction& f,
                               const std::vector<std::vector<double>>& points, double tol) {
  return make_report("covariance_E", covariance_E_samples(n, lambda, g, f, points), tol);
}

std::vector<Sample> covariance_EN_samples(int n, int N, double lambda, const ConformalMap& g, const TestFunction& f,
                                          const std::vector<std::vector<double>>& points) {
  require_tangential(g);
  if (N < 1 || N > 4) throw DomainError("restricted covariance is checked numerically for 1 <= N <= 4");
  const DiffOp& e = restricted_EN(n, N);
  const int order = N + 2;
  const ConformalMap ginv = g.inverse();
  std::vector<Sample> out;
  for (const auto& x : points) {
    if (x.back() != 0.0) throw DomainError("restricted covariance points must lie on xi_n = 0");
    const double lhs = apply_at(e, lambda, rho(lambda, g, f, x, order), x);
    auto y = ginv.act(x);
    y.back() = 0.0;  // exact on the hyperplane; removes rounding in the last coordinate
    const double k = ginv.kappa(x);
    const double rhs = std::pow(k, lambda + N) * apply_at(e, lambda, f(Jet<double>::variables(y, order)), y);
    out.push_back({lhs, rhs, where(g, x)});
  }
  return out;
}

CheckReport check_covariance_EN(int n, int N, double lambda, const ConformalMap& g, const TestFunction& f,
                                const std::vector<std::vector<double>>& points, double tol) {
  return make_report("covariance_EN", covariance_EN_samples(n, N, lambda, g, f, points), tol);
}

}  // namespace covop
