#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "covop/diffop.hpp"
#include "covop/juhl.hpp"
#include "covop/verify.hpp"

namespace covop::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

// Polynomials travel as [[exponents...], "numerator", "denominator"] triples.
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j, const Variables& vars);

// Full operator document: {"n", "N", "variables", "terms": [{"alpha", "coefficient", "display"}]}.
nlohmann::json operator_to_json(const DiffOp& d, int N);
DiffOp operator_from_json(const nlohmann::json& j);

nlohmann::json coeff_table_json(int n, int N);
std::string coeff_table_csv(int n, int N);
std::string coeff_table_latex(int n, int N);

nlohmann::json report_json(const SuiteOptions& opt, const std::vector<CheckReport>& reports);

// Entry point shared by the executable and the tests. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covop::cli
