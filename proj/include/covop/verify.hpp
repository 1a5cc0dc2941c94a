#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "covop/conformal.hpp"
#include "covop/diffop.hpp"

namespace covop {

struct CheckReport {
  std::string name;
  std::size_t samples = 0;
  double max_rel_err = 0;
  double tolerance = 0;
  bool passed = false;
  std::string diagnostics;  // where the worst sample occurred
};

// One two-sided evaluation of an identity.
struct Sample {
  double lhs = 0;
  double rhs = 0;
  std::string where;
};

// Relative error |lhs - rhs| / max(|lhs|, |rhs|, floor) per sample, with
// floor = max(1e-6 * largest magnitude in the batch, abs_floor).
CheckReport make_report(std::string name, const std::vector<Sample>& samples, double tolerance, double abs_floor = 0);

// Exact identities: max_rel_err is 0 when every instance holds and 1 otherwise.
CheckReport exact_report(std::string name, std::size_t instances, std::size_t failures, std::string first_failure);

// Formats a point for diagnostics.
std::string describe_point(std::span<const double> x);

// sum_alpha coeff_alpha(lambda, point) * d^alpha u at the base point of the jet.
double apply_at(const DiffOp& d, double lambda, const Jet<double>& u, std::span<const double> point);

// E_lambda o rho_lambda(g) = rho_{lambda+1}(g) o E_lambda at each point, for g preserving the hyperplane.
std::vector<Sample> covariance_E_samples(int n, double lambda, const ConformalMap& g, const TestFunction& f,
                                         const std::vector<std::vector<double>>& points);
CheckReport check_covariance_E(int n, double lambda, const ConformalMap& g, const TestFunction& f,
                               const std::vector<std::vector<double>>& points, double tol);

// res E_{lambda,N} o rho_lambda(g) = rho'_{lambda+N}(g) o res E_{lambda,N}; points lie on xi_n = 0. N <= 4.
std::vector<Sample> covariance_EN_samples(int n, int N, double lambda, const ConformalMap& g, const TestFunction& f,
                                          const std::vector<std::vector<double>>& points);
CheckReport check_covariance_EN(int n, int N, double lambda, const ConformalMap& g, const TestFunction& f,
                                const std::vector<std::vector<double>>& points, double tol);

// J_lambda u (xi) = 1/Gamma(lambda - n/2) * integral |xi - eta|^{2 lambda - 2n} u(eta) d eta over the
// ball of the given radius around xi, in polar coordinates. n in {1, 2}, Re lambda > n/2.
double knapp_stein(int n, double lambda, const std::function<double(const std::vector<double>&)>& u,
                   std::span<const double> xi, double radius, double quad_tol);

struct KnappSteinOptions {
  double quad_tol = 1e-6;
  double radius_scale = 1.0;  // multiplies the truncation radius
};

// J_lambda(rho_lambda(g) f) = rho_{n-lambda}(g)(J_lambda f) for g without inversions.
std::vector<Sample> knapp_stein_samples(int n, double lambda, const ConformalMap& g, const TestFunction& f,
                                        const std::vector<std::vector<double>>& points, const KnappSteinOptions& opt);
CheckReport check_KS_intertwine(int n, double lambda, const ConformalMap& g, const TestFunction& f,
                                const std::vector<std::vector<double>>& points, double tol,
                                const KnappSteinOptions& opt = {});

// <h_s, g^> = <h^_s, g> for g = exp(-|x|^2), both sides by radial quadrature against the closed form
// 2^{n+s-1} pi^{n/2} |S^{n-1}|. Requires -n < s < 0.
CheckReport check_hs_fourier_pairing(int n, double s, double tol);

// A point of the ambient space R^{1,n+1}: time t and space x = (x_0, ..., x_n).
struct AmbientPoint {
  double t = 1;
  std::vector<double> x;
  double Q() const;  // t^2 - |x|^2
  std::vector<double> coords() const;  // (t, x_0, ..., x_n)
};

// Jets of the ambient coordinates (t, x_0, ..., x_n) at p.
std::vector<Jet<double>> ambient_variables(const AmbientPoint& p, int order = 2);
// d'Alembertian d_t^2 - sum_j d_{x_j}^2 read off a jet in the ambient coordinates.
double box(const Jet<double>& F);
// x_n box F - 2 mu dF/dx_n at the base point.
double B_mu(double mu, const Jet<double>& F, const AmbientPoint& p);

// kappa_c(xi)^{lambda+1} B_{lambda-n/2+1} F (1, c(xi)) = -E_lambda f(xi), F(t, x) = (t+x_0)^{-lambda} f(x'/(t+x_0)).
CheckReport check_ambient_noncompact(int n, double lambda, const TestFunction& f,
                                     const std::vector<std::vector<double>>& points, double tol);

// On S, at points with |x_n| > 0.1: B_mu F by direct ambient differentiation, by the Yamabe-operator formula,
// and by transport of -E_lambda through the chart. f_S is a function on R^{n+1} read on S.
CheckReport check_ambient_compact(int n, double lambda, const TestFunction& f_S,
                                  const std::vector<std::vector<double>>& points, double tol);

// B_mu F = x_n |x_n|^{-mu} box(|x_n|^mu F) + mu(mu-1)/x_n F for F on R^{n+2}, at points with x_n != 0.
CheckReport check_cmu2(int n, double mu, const TestFunction& F, const std::vector<AmbientPoint>& points, double tol);

// Delta_S 1 = n(n-2)/4 through the homogeneous extension |x|^{1-n/2}.
CheckReport check_yamabe_constant(int n, const std::vector<std::vector<double>>& sphere_points, double tol);

enum class Extension {
  TIndependent,  // |x|^{1-n/2} f(x/|x|)
  TDependent,    // t^{1-n/2} f(x/t)
  PlusQG,        // the t-independent one plus Q(x) |x|^{-n/2-1} f(x/|x|)
};

// Value jet of an extension of f_S of degree 1 - n/2.
Jet<double> extension_jet(Extension e, int n, const TestFunction& f_S, const AmbientPoint& p);

// box F_a = box F_b on the light cone. Each extension must satisfy the Euler identity
// t F_t + sum x_j F_{x_j} = (1 - n/2) F to 1e-10, otherwise DomainError.
CheckReport check_extension_independence(int n, const TestFunction& f_S, Extension a, Extension b,
                                         const std::vector<AmbientPoint>& cone_points, double tol);

// Seeded verification suites.
struct SuiteOptions {
  std::string suite = "all";  // symbolic | numeric | ambient | all
  int n_min = 1;
  int n_max = 8;
  std::uint64_t seed = 20160901;
  std::map<std::string, double> tolerances;  // overrides by name
};

const std::map<std::string, double>& default_tolerances();
bool is_known_suite(const std::string& name);

// Throws std::invalid_argument on an unknown suite or tolerance name.
std::vector<CheckReport> run_suite(const SuiteOptions& opt);

// The individual suite builders used by run_suite.
std::vector<CheckReport> symbolic_suite(const SuiteOptions& opt);
std::vector<CheckReport> numeric_suite(const SuiteOptions& opt);
std::vector<CheckReport> ambient_suite(const SuiteOptions& opt);
std::vector<CheckReport> geometry_reports(const SuiteOptions& opt);

}  // namespace covop
