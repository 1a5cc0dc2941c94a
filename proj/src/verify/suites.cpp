#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>

#include "covop/juhl.hpp"
#include "covop/sampling.hpp"
#include "covop/special.hpp"
#include "covop/symbol_calculus.hpp"
#include "covop/verify.hpp"

namespace covop {

namespace {

double tolerance(const SuiteOptions& opt, const std::string& name) {
  if (auto it = opt.tolerances.find(name); it != opt.tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

bool in_range(const SuiteOptions& opt, int n) { return opt.n_min <= n && n <= opt.n_max; }

std::string label(const std::string& family, int n) { return family + "/n=" + std::to_string(n); }

Sampler sampler(const SuiteOptions& opt, const std::string& name) { return Sampler(Sampler::derive(opt.seed, name)); }

CheckReport renamed(CheckReport r, std::string name) {
  r.name = std::move(name);
  return r;
}

// A point where every inversion of g is evaluated at distance >= 0.1 from the origin.
std::vector<double> admissible_point(Sampler& s, const ConformalMap& g, int n, double box, bool on_hyperplane) {
  for (;;) {
    auto x = s.point(n, -box, box);
    if (on_hyperplane) x.back() = 0.0;
    if (g.min_inversion_radius(x) >= 0.1) return x;
  }
}

const std::vector<DiffOp>& en_sequence(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<DiffOp>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_EN_sequence(n, 10)).first;
  return it->second;
}

constexpr int kMaxN = 10;

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols{
      {"covariance", 1e-9},     {"restricted_covariance", 1e-8}, {"knapp_stein", 1e-5},
      {"knapp_stein_gaussian", 1e-8}, {"hs_pairing", 1e-8},     {"inverse_j", 1e-10},
      {"geometry", 1e-10},      {"m_intertwining", 1e-12},       {"ambient", 1e-9},
      {"ambient_compact", 1e-8}, {"yamabe", 1e-10},             {"extension", 1e-9},
  };
  return tols;
}

bool is_known_suite(const std::string& name) {
  return name == "symbolic" || name == "numeric" || name == "ambient" || name == "all";
}

std::vector<CheckReport> symbolic_suite(const SuiteOptions& opt) {
  std::vector<CheckReport> out;
  for (int n = 1; n <= 8; ++n) {
    if (!in_range(opt, n)) continue;
    const bool ok = check_MI(n);
    out.push_back(exact_report(label("symbol_identity", n), 1, ok ? 0 : 1, "symbol identity fails"));
  }
  for (int n = 1; n <= 8; ++n) {
    if (!in_range(opt, n)) continue;
    const Variables& vars = lambda_xi_variables(n);
    const DiffOp e = build_E(n);
    const Poly mu = Poly::variable(vars, std::size_t{0});
    const Poly xn = Poly::variable(vars, static_cast<std::size_t>(n));
    std::size_t failures = 0;
    std::string first;
    for (int k = 1; k <= kMaxN; ++k) {
      const Poly expected = Rational(k) * (Rational(2) * mu + Poly::constant(vars, 1 + k - n)) * xn.pow(k - 1);
      if (!(apply(e, xn.pow(k)) == expected) && failures++ == 0) first = "k=" + std::to_string(k);
    }
    out.push_back(exact_report(label("e_on_xi_n_powers", n), kMaxN, failures, first));
  }
  for (int n = 2; n <= 6; ++n) {
    if (!in_range(opt, n)) continue;
    const auto& seq = en_sequence(n);
    const Variables& vars = lambda_xi_variables(n);
    const Poly xn = Poly::variable(vars, static_cast<std::size_t>(n));
    std::size_t fail_ii = 0, fail_iii = 0, fail_struct = 0;
    std::string first_ii, first_iii, first_struct;
    Rational factorial(1);
    for (int N = 1; N <= kMaxN; ++N) {
      factorial *= N;
      const std::string where = "N=" + std::to_string(N);
      const Poly a0 = a0_closed_form(n, N);
      if (!(apply(seq[N - 1], xn.pow(N)) == factorial * a0.rebase(vars)) && fail_ii++ == 0) first_ii = where;

      const DiffOp restricted = restrict_to_hyperplane(seq[N - 1]);
      try {
        const TangentialOp t = decompose_tangential(restricted, N);
        if (!(t.coeffs.at(0) == RationalFunction(a0)) && fail_iii++ == 0) first_iii = where;
        if (!(restrict_to_hyperplane(t.to_diffop()) == restricted) && fail_struct++ == 0) first_struct = where;
      } catch (const NonTangentialForm& err) {
        if (fail_iii++ == 0) first_iii = where + ": " + err.what();
        if (fail_struct++ == 0) first_struct = where + ": " + err.what();
      }
    }
    out.push_back(exact_report(label("en_on_xi_n_power_N", n), kMaxN, fail_ii, first_ii));
    out.push_back(exact_report(label("a0_closed_form", n), kMaxN, fail_iii, first_iii));
    out.push_back(exact_report(label("structure", n), kMaxN, fail_struct, first_struct));
  }
  return out;
}

std::vector<CheckReport> geometry_reports(const SuiteOptions& opt) {
  std::vector<int> dims;
  for (int n = 2; n <= 4; ++n)
    if (in_range(opt, n)) dims.push_back(n);
  if (dims.empty()) return {};
  constexpr int kSamples = 100;
  std::vector<Sample> cocycle, jet, covxin, chart_conf, chart_dist, m_intw;
  Sampler s = sampler(opt, "geometry");
  for (int i = 0; i < kSamples; ++i) {
    const int n = dims[i % dims.size()];
    const ConformalMap g1 = s.word(n, 3, true), g2 = s.word(n, 3, true);
    const ConformalMap g = g1 * g2;
    const auto x = admissible_point(s, g, n, 2.0, false);
    const std::string at = g.to_string() + " at " + describe_point(x);

    const double k = g.kappa(x);
    cocycle.push_back({k, g1.kappa(g2.act(x)) * g2.kappa(x), at});

    const auto u = s.unit_vector(n);
    const Eigen::VectorXd eta = Eigen::Map<const Eigen::VectorXd>(u.data(), n);
    jet.push_back({(jacobian(g, x) * eta).norm(), k, at});
    covxin.push_back({g.act(x).back(), k * x.back(), at});

    const auto xi = s.point(n, -2, 2), zeta = s.point(n, -2, 2);
    chart_conf.push_back({(chart_jacobian(xi) * eta).norm(), kappa_c(xi), describe_point(xi)});
    const auto cx = chart_c(xi), cz = chart_c(zeta);
    double lhs = 0, d = 0;
    for (int j = 0; j <= n; ++j) lhs += (cx[j] - cz[j]) * (cx[j] - cz[j]);
    for (int j = 0; j < n; ++j) d += (xi[j] - zeta[j]) * (xi[j] - zeta[j]);
    chart_dist.push_back({lhs, kappa_c(xi) * d * kappa_c(zeta), describe_point(xi) + " " + describe_point(zeta)});

    const TestFunction f = s.gaussian(n);
    const double lambda = s.uniform(-2, 3);
    const auto y = admissible_point(s, g.inverse(), n, 2.0, false);
    m_intw.push_back({y.back() * rho(lambda, g, f, y, 0).value(), rho(lambda - 1, g, f.times_coordinate(n - 1), y, 0).value(),
                      g.to_string() + " at " + describe_point(y)});
  }
  const double tol = tolerance(opt, "geometry");
  return {make_report("cocycle", cocycle, tol),          make_report("kappa_jet", jet, tol),
          make_report("hyperplane_covariance", covxin, tol),            make_report("chart_conformal", chart_conf, tol),
          make_report("chart_distance", chart_dist, tol), make_report("m_intertwining", m_intw, tolerance(opt, "m_intertwining"))};
}

std::vector<CheckReport> numeric_suite(const SuiteOptions& opt) {
  std::vector<CheckReport> out;
  for (int n : {2, 3}) {
    if (!in_range(opt, n)) continue;
    Sampler s = sampler(opt, label("covariance_E", n));
    std::vector<Sample> samples;
    for (int i = 0; i < 50; ++i) {
      const ConformalMap g = i < 4 ? ConformalMap(n, {s.generator(n, static_cast<Sampler::Kind>(i), true)})
                                   : s.word(n, 3, true);
      const double lambda = s.uniform(-2, 3);
      const TestFunction f = s.gaussian(n);
      const auto x = admissible_point(s, g.inverse(), n, 2.0, false);
      auto one = covariance_E_samples(n, lambda, g, f, {x});
      samples.insert(samples.end(), one.begin(), one.end());
    }
    out.push_back(make_report(label("covariance_E", n), samples, tolerance(opt, "covariance")));
  }
  for (int n : {2, 3}) {
    if (!in_range(opt, n)) continue;
    for (int N = 1; N <= 3; ++N) {
      const std::string name = label("covariance_EN", n) + "/N=" + std::to_string(N);
      Sampler s = sampler(opt, name);
      std::vector<Sample> samples;
      for (int i = 0; i < 20; ++i) {
        const ConformalMap g = i < 4 ? ConformalMap(n, {s.generator(n, static_cast<Sampler::Kind>(i), true)})
                                     : s.word(n, 3, true);
        const double lambda = s.uniform(-2, 3);
        const TestFunction f = s.gaussian(n);
        const auto x = admissible_point(s, g.inverse(), n, 2.0, true);
        auto one = covariance_EN_samples(n, N, lambda, g, f, {x});
        samples.insert(samples.end(), one.begin(), one.end());
      }
      out.push_back(make_report(name, samples, tolerance(opt, "restricted_covariance")));
    }
  }
  for (int n : {1, 2}) {
    if (!in_range(opt, n)) continue;
    Sampler s = sampler(opt, label("knapp_stein", n));
    std::vector<Sample> samples;
    for (double lambda : {0.8 * n, 1.1 * n}) {
      for (auto kind : {Sampler::kDilation, Sampler::kTranslation, Sampler::kRotation}) {
        const ConformalMap g(n, {s.generator(n, kind, false)});
        const TestFunction f = s.gaussian(n);
        std::vector<std::vector<double>> points;
        for (int i = 0; i < 5; ++i) points.push_back(s.point(n, -1.5, 1.5));
        auto batch = knapp_stein_samples(n, lambda, g, f, points, {});
        samples.insert(samples.end(), batch.begin(), batch.end());
      }
    }
    out.push_back(make_report(label("knapp_stein", n), samples, tolerance(opt, "knapp_stein")));
  }
  if (in_range(opt, 1)) {
    const TestFunction f = TestFunction::gaussian({0.0}, 1.0);
    const auto u = [&f](const std::vector<double>& eta) { return f(eta); };
    const double radius_pad = f.decay_radius(1e-14);
    std::vector<Sample> samples;
    for (double xi : {-1.3, 0.0, 0.4, 2.1}) {
      const std::vector<double> p{xi};
      samples.push_back({knapp_stein(1, 1.0, u, p, std::abs(xi) + radius_pad, 1e-11), 1.0, describe_point(p)});
    }
    out.push_back(make_report("knapp_stein_gaussian/n=1", samples, tolerance(opt, "knapp_stein_gaussian")));
  }
  const std::pair<int, double> pairings[] = {{1, -0.5}, {2, -1.0}, {3, -1.5}};
  for (const auto& [n, sv] : pairings) {
    if (!in_range(opt, n)) continue;
    out.push_back(renamed(check_hs_fourier_pairing(n, sv, tolerance(opt, "hs_pairing")), label("hs_pairing", n)));
  }
  for (int n = 1; n <= 4; ++n) {
    if (!in_range(opt, n)) continue;
    Sampler s = sampler(opt, label("inverse_j", n));
    std::vector<std::complex<double>> lambdas;
    while (lambdas.size() < 20) {
      const std::complex<double> l(s.uniform(-1.5, n + 1.5), s.uniform(-1, 1));
      if (near_gamma_pole(l, 1e-3) || near_gamma_pole(double(n) - l, 1e-3)) continue;
      lambdas.push_back(l);
    }
    CheckReport r;
    r.name = label("inverse_j", n);
    r.samples = lambdas.size();
    r.tolerance = tolerance(opt, "inverse_j");
    r.max_rel_err = inverseJ_max_rel_err(n, lambdas);
    r.passed = r.max_rel_err <= r.tolerance;
    r.diagnostics = "symbol product at e_n and the diagonal direction";
    out.push_back(r);
  }
  auto geo = geometry_reports(opt);
  out.insert(out.end(), geo.begin(), geo.end());
  return out;
}

std::vector<CheckReport> ambient_suite(const SuiteOptions& opt) {
  std::vector<CheckReport> out;
  for (int n : {2, 3, 4}) {
    if (!in_range(opt, n)) continue;
    Sampler s = sampler(opt, label("ambient", n));
    const double lambda = s.uniform(-1, 3);
    const TestFunction f = s.gaussian(n);
    std::vector<std::vector<double>> points;
    for (int i = 0; i < 30; ++i) points.push_back(s.point(n, -1.5, 1.5));
    out.push_back(renamed(check_ambient_noncompact(n, lambda, f, points, tolerance(opt, "ambient")),
                          label("ambient_noncompact", n)));

    std::vector<TestFunction::Monomial> terms;
    for (int a = 0; a <= n; ++a) {
      for (int b = a; b <= n; ++b) {
        Exponents e{};
        ++e[a];
        ++e[b];
        terms.push_back({s.uniform(-1, 1), e});
      }
      Exponents e{};
      ++e[a];
      terms.push_back({s.uniform(-1, 1), e});
    }
    terms.push_back({s.uniform(-1, 1), Exponents{}});
    const TestFunction poly = TestFunction::polynomial(n + 1, terms);
    std::vector<std::vector<double>> sphere;
    while (sphere.size() < 20) {
      const auto x = s.unit_vector(n + 1);
      if (std::abs(x.back()) > 0.1 && 1 + x[0] > 0.05) sphere.push_back(x);
    }
    const double lambda_c = s.uniform(-1, 3);
    out.push_back(renamed(check_ambient_compact(n, lambda_c, poly, sphere, tolerance(opt, "ambient_compact")),
                          label("ambient_compact", n)));

    const TestFunction F = s.gaussian(n + 2);
    std::vector<AmbientPoint> amb;
    while (amb.size() < 30) {
      AmbientPoint p{s.uniform(-2, 2), s.point(n + 1, -2, 2)};
      if (std::abs(p.x.back()) > 0.1) amb.push_back(std::move(p));
    }
    out.push_back(renamed(check_cmu2(n, s.uniform(-2, 3), F, amb, tolerance(opt, "ambient")), label("b_mu_conjugation", n)));

    std::vector<AmbientPoint> cone;
    for (int i = 0; i < 30; ++i) {
      const double r = s.uniform(0.5, 2);
      auto y = s.unit_vector(n + 1);
      for (auto& v : y) v *= r;
      cone.push_back({r, y});
    }
    const TestFunction fs = s.gaussian(n + 1);
    const double tol = tolerance(opt, "extension");
    out.push_back(renamed(check_extension_independence(n, fs, Extension::TIndependent, Extension::TDependent, cone, tol),
                          label("extension_t_dependent", n)));
    out.push_back(renamed(check_extension_independence(n, fs, Extension::TIndependent, Extension::PlusQG, cone, tol),
                          label("extension_plus_qg", n)));
  }
  for (int n = 1; n <= 8; ++n) {
    if (!in_range(opt, n)) continue;
    Sampler s = sampler(opt, label("yamabe", n));
    std::vector<std::vector<double>> points;
    for (int i = 0; i < 10; ++i) points.push_back(s.unit_vector(n + 1));
    out.push_back(renamed(check_yamabe_constant(n, points, tolerance(opt, "yamabe")), label("yamabe", n)));
  }
  return out;
}

std::vector<CheckReport> run_suite(const SuiteOptions& opt) {
  if (!is_known_suite(opt.suite)) throw std::invalid_argument("unknown suite '" + opt.suite + "'");
  for (const auto& [name, value] : opt.tolerances) {
    if (!default_tolerances().contains(name)) throw std::invalid_argument("unknown tolerance '" + name + "'");
    if (!(value > 0)) throw std::invalid_argument("tolerance '" + name + "' must be positive");
  }
  if (opt.n_min > opt.n_max) throw std::invalid_argument("n-min exceeds n-max");
  std::vector<CheckReport> out;
  auto append = [&out](std::vector<CheckReport> r) { out.insert(out.end(), r.begin(), r.end()); };
  if (opt.suite == "symbolic" || opt.suite == "all") append(symbolic_suite(opt));
  if (opt.suite == "numeric" || opt.suite == "all") append(numeric_suite(opt));
  if (opt.suite == "ambient" || opt.suite == "all") append(ambient_suite(opt));
  return out;
}

}  // namespace covop
