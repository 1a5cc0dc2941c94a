#include <algorithm>
#include <cmath>
#include <cstdio>

#include "covop/verify.hpp"

namespace covop {

std::string describe_point(std::span<const double> x) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", x[i]);
    s += buf;
  }
  return s + ")";
}

CheckReport make_report(std::string name, const std::vector<Sample>& samples, double tolerance, double abs_floor) {
  CheckReport r;
  r.name = std::move(name);
  r.samples = samples.size();
  r.tolerance = tolerance;
  double biggest = 0;
  for (const auto& s : samples) biggest = std::max({biggest, std::abs(s.lhs), std::abs(s.rhs)});
  const double floor = std::max({1e-6 * biggest, abs_floor, 1e-300});
  bool finite = true;
  for (const auto& s : samples) {
    if (!std::isfinite(s.lhs) || !std::isfinite(s.rhs)) {
      if (finite) r.diagnostics = "non-finite value at " + s.where;
      finite = false;
      continue;
    }
    const double err = std::abs(s.lhs - s.rhs) / std::max({std::abs(s.lhs), std::abs(s.rhs), floor});
    if (finite && (err > r.max_rel_err || r.diagnostics.empty())) {
      r.max_rel_err = err;
      r.diagnostics = s.where;
    }
  }
  if (!finite) r.max_rel_err = INFINITY;
  r.passed = finite && r.max_rel_err <= tolerance;
  return r;
}

CheckReport exact_report(std::string name, std::size_t instances, std::size_t failures, std::string first_failure) {
  CheckReport r;
  r.name = std::move(name);
  r.samples = instances;
  r.tolerance = 0;
  r.max_rel_err = failures == 0 ? 0.0 : 1.0;
  r.passed = failures == 0;
  r.diagnostics = failures == 0 ? "exact" : first_failure;
  return r;
}

double apply_at(const DiffOp& d, double lambda, const Jet<double>& u, std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(d.dimension())) throw DimensionMismatch("point dimension");
  std::vector<double> values{lambda};
  values.insert(values.end(), point.begin(), point.end());
  double total = 0;
  for (const auto& [alpha, coeff] : d.terms()) {
    if (total_degree(alpha) > u.order()) throw DomainError("jet order too small for the operator");
    total += coeff.eval<double>(values) * u.derivative(alpha);
  }
  return total;
}

}  // namespace covop
