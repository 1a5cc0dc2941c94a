#include "covop/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <ostream>
#include <sstream>

namespace covop::cli {

using nlohmann::json;

namespace {

constexpr int kMaxDim = 8;
constexpr int kMaxOrder = 12;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num_str(const Rational& q) { return q.get_num().get_str(); }
std::string den_str(const Rational& q) { return q.get_den().get_str(); }

json rational_json(const Rational& q) { return to_string(q); }

json affine_json(const AffineLambda& a) {
  return {{"constant", rational_json(a.constant)}, {"lambda", rational_json(a.lambda)}};
}

void check_range(int n, int N) {
  if (n < 1 || n > kMaxDim) throw UsageError("--n must lie in [1, " + std::to_string(kMaxDim) + "]");
  if (N < 1 || N > kMaxOrder) throw UsageError("--N must lie in [1, " + std::to_string(kMaxOrder) + "]");
}

std::vector<Rational> polynomial_coeffs(const RationalFunction& a) {
  if (!a.is_polynomial()) throw Error("coefficient is not a polynomial in lambda: " + a.to_string());
  return a.num_coeffs();
}

// c0 + c1 x + ... in LaTeX, highest power first.
std::string latex_poly(const std::vector<Rational>& c) {
  std::string s;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    Rational q = c[k];
    if (q == 0) continue;
    const bool neg = q < 0;
    if (neg) q = -q;
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    const bool unit = q == 1 && k > 0;
    if (!unit) s += q.get_den() == 1 ? num_str(q) : "\\frac{" + num_str(q) + "}{" + den_str(q) + "}";
    if (k >= 1) s += "\\lambda";
    if (k >= 2) s += "^{" + std::to_string(k) + "}";
  }
  return s.empty() ? "0" : s;
}

json normalization_json(const NormalizationMeta& m) {
  json gammas = json::array();
  for (const auto& g : m.dtilde_gammas) gammas.push_back({{"argument", affine_json(g.argument)}, {"exponent", g.exponent}});
  json ratio = json::array();
  for (const auto& f : m.ratio_factors) ratio.push_back(affine_json(f));
  return {{"pi_power", rational_json(m.pi_power)},
          {"dtilde_gammas", gammas},
          {"parity", m.parity == Parity::Even ? "even" : "odd"},
          {"ratio_constant", rational_json(m.ratio_constant)},
          {"ratio_factors", ratio}};
}

double parse_double(const std::string& text) {
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("not a number: '" + text + "'");
  return v;
}

}  // namespace

json poly_to_json(const Poly& p) {
  json out = json::array();
  const std::size_t nv = p.variables().size();
  for (const auto& [e, c] : p.terms()) {
    json exps = json::array();
    for (std::size_t i = 0; i < nv; ++i) exps.push_back(static_cast<int>(e[i]));
    out.push_back({exps, num_str(c), den_str(c)});
  }
  return out;
}

Poly poly_from_json(const json& j, const Variables& vars) {
  Poly p(vars);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw Error("polynomial term must be [exponents, num, den]");
    const auto& exps = t.at(0);
    if (exps.size() != vars.size()) throw Error("exponent vector has the wrong length");
    Exponents e{};
    for (std::size_t i = 0; i < exps.size(); ++i) {
      const int k = exps[i].get<int>();
      if (k < 0 || k > 255) throw Error("exponent out of range");
      e[i] = static_cast<std::uint8_t>(k);
    }
    const Rational num = parse_rational(t.at(1).get<std::string>());
    const Rational den = parse_rational(t.at(2).get<std::string>());
    if (den == 0) throw Error("zero denominator");
    p.add_term(e, num / den);
  }
  return p;
}

json operator_to_json(const DiffOp& d, int N) {
  json terms = json::array();
  for (const auto& [alpha, coeff] : d.terms()) {
    json a = json::array();
    for (int j = 0; j < d.dimension(); ++j) a.push_back(static_cast<int>(alpha[j]));
    terms.push_back({{"alpha", a}, {"coefficient", poly_to_json(coeff)}, {"display", coeff.to_string()}});
  }
  return {{"n", d.dimension()}, {"N", N}, {"variables", d.variables().names()}, {"terms", terms}};
}

DiffOp operator_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  if (n < 1 || n > static_cast<int>(kMaxVariables) - 1) throw Error("operator dimension out of range");
  const Variables& vars = lambda_xi_variables(n);
  if (j.at("variables").get<std::vector<std::string>>() != vars.names()) throw VariableMismatch("unexpected variable list");
  DiffOp d(n);
  for (const auto& t : j.at("terms")) {
    const auto& a = t.at("alpha");
    if (a.size() != static_cast<std::size_t>(n)) throw Error("multi-index has the wrong length");
    MultiIndex alpha{};
    for (int i = 0; i < n; ++i) alpha[i] = static_cast<std::uint8_t>(a[i].get<int>());
    d.add_term(alpha, poly_from_json(t.at("coefficient"), vars));
  }
  return d;
}

json coeff_table_json(int n, int N) {
  check_range(n, N);
  const TangentialOp t = juhl_coeffs(n, N);
  json rows = json::array();
  for (std::size_t j = 0; j < t.coeffs.size(); ++j) {
    const Poly p = upoly::to_poly(polynomial_coeffs(t.coeffs[j]));
    json row{{"j", j}, {"polynomial", poly_to_json(p)}, {"display", t.coeffs[j].to_string()}};
    if (j == 0) {
      json factors = json::array();
      for (const auto& [c, l] : a0_factors(n, N)) factors.push_back(affine_json({c, l}));
      row["factors"] = factors;
    }
    rows.push_back(row);
  }
  return {{"n", n}, {"N", N}, {"variables", {"lambda"}}, {"a", rows}, {"normalization", normalization_json(normalization_meta(n, N))}};
}

std::string coeff_table_csv(int n, int N) {
  check_range(n, N);
  const TangentialOp t = juhl_coeffs(n, N);
  std::ostringstream out;
  out << "j,lambda_power,numerator,denominator\n";
  for (std::size_t j = 0; j < t.coeffs.size(); ++j) {
    const auto c = polynomial_coeffs(t.coeffs[j]);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      out << j << ',' << k << ',' << num_str(c[k]) << ',' << den_str(c[k]) << '\n';
    }
  }
  return out.str();
}

std::string coeff_table_latex(int n, int N) {
  check_range(n, N);
  const TangentialOp t = juhl_coeffs(n, N);
  std::ostringstream out;
  out << "% n = " << n << ", N = " << N << "\n\\begin{align*}\n";
  std::string product;
  for (const auto& [c, l] : a0_factors(n, N)) product += "(" + latex_poly({c, l}) + ")";
  out << "a_0(\\lambda, " << N << ") &= " << product;
  for (std::size_t j = 1; j < t.coeffs.size(); ++j) {
    out << " \\\\\na_{" << j << "}(\\lambda, " << N << ") &= " << latex_poly(polynomial_coeffs(t.coeffs[j]));
  }
  out << "\n\\end{align*}\n";
  return out.str();
}

json report_json(const SuiteOptions& opt, const std::vector<CheckReport>& reports) {
  json tols = json::object();
  for (const auto& [name, value] : default_tolerances()) {
    const auto it = opt.tolerances.find(name);
    tols[name] = it == opt.tolerances.end() ? value : it->second;
  }
  json list = json::array();
  bool all = true;
  for (const auto& r : reports) {
    all = all && r.passed;
    list.push_back({{"name", r.name},
                    {"samples", r.samples},
                    {"max_rel_err", r.max_rel_err},
                    {"tolerance", r.tolerance},
                    {"passed", r.passed},
                    {"diagnostics", r.diagnostics}});
  }
  return {{"suite", opt.suite}, {"seed", opt.seed},       {"n_min", opt.n_min},  {"n_max", opt.n_max},
          {"tolerances", tols}, {"passed", all},           {"reports", list}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conformally covariant operators: coefficient tables, operator export and verification"};
  app.require_subcommand(1);

  int n = 0, N = 0;
  std::string format = "json";
  auto* coeffs = app.add_subcommand("coeffs", "Tangential coefficients a_j(lambda, N) of the restricted operator");
  coeffs->add_option("--n", n, "dimension")->required();
  coeffs->add_option("--N", N, "order")->required();
  coeffs->add_option("--format", format, "json | csv | latex")->check(CLI::IsMember({"json", "csv", "latex"}));

  auto* op = app.add_subcommand("operator", "Export the composed operator E_{lambda,N}");
  op->add_option("--n", n, "dimension")->required();
  op->add_option("--N", N, "order")->required();
  op->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

  SuiteOptions sopt;
  std::vector<std::string> tol_args;
  auto* verify = app.add_subcommand("verify", "Run the seeded verification suites");
  verify->add_option("--suite", sopt.suite, "symbolic | numeric | ambient | all")
      ->check(CLI::IsMember({"symbolic", "numeric", "ambient", "all"}));
  verify->add_option("--n-min", sopt.n_min, "smallest dimension to include");
  verify->add_option("--n-max", sopt.n_max, "largest dimension to include");
  verify->add_option("--seed", sopt.seed, "base seed");
  verify->add_option("--tol", tol_args, "tolerance override name=value (repeatable)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (coeffs->parsed()) {
      if (format == "json") {
        out << coeff_table_json(n, N).dump(2) << "\n";
      } else if (format == "csv") {
        out << coeff_table_csv(n, N);
      } else {
        out << coeff_table_latex(n, N);
      }
      return kOk;
    }
    if (op->parsed()) {
      check_range(n, N);
      out << operator_to_json(build_EN(n, N), N).dump(2) << "\n";
      return kOk;
    }
    for (const auto& t : tol_args) {
      const auto eq = t.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects name=value, got '" + t + "'");
      sopt.tolerances[t.substr(0, eq)] = parse_double(t.substr(eq + 1));
    }
    std::vector<CheckReport> reports;
    try {
      reports = run_suite(sopt);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const json doc = report_json(sopt, reports);
    out << doc.dump(2) << "\n";
    return doc.at("passed").get<bool>() ? kOk : kVerificationFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace covop::cli
