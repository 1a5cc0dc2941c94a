#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "covop/cli.hpp"

using namespace covop;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("coeffs json: a_0 at N = 1, n = 4 is 2 lambda - 2") {
  const auto r = run({"coeffs", "--n", "4", "--N", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["n"] == 4);
  REQUIRE(doc["a"].size() == 1);
  const Poly a0 = cli::poly_from_json(doc["a"][0]["polynomial"], lambda_variables());
  CHECK(a0 == a0_closed_form(4, 1));
  CHECK(doc["a"][0]["display"] == "2λ - 2");
  CHECK(doc["normalization"].contains("ratio_factors"));
}

TEST_CASE("coeffs: row count and closed form over the full range") {
  for (int n = 1; n <= 8; n += 3) {
    for (int N : {1, 4, 7, 12}) {
      const json doc = cli::coeff_table_json(n, N);
      CHECK(doc["a"].size() == static_cast<std::size_t>(N / 2 + 1));
      CHECK(cli::poly_from_json(doc["a"][0]["polynomial"], lambda_variables()) == a0_closed_form(n, N));
    }
  }
}

TEST_CASE("coeffs csv: n = 3, N = 2 expands a_0 to 4 lambda^2 + 2 lambda") {
  const auto r = run({"coeffs", "--n", "3", "--N", "2", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "j,lambda_power,numerator,denominator\n0,1,2,1\n0,2,4,1\n1,0,1,1\n1,1,2,1\n");
}

TEST_CASE("coeffs latex: product form for a_0") {
  const auto r = run({"coeffs", "--n", "3", "--N", "2", "--format", "latex"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("a_0(\\lambda, 2) &= (2\\lambda)(2\\lambda + 1)") != std::string::npos);
  CHECK(r.out.find("a_{1}(\\lambda, 2) &= 2\\lambda + 1") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"coeffs", "--n", "0", "--N", "1"}).code == 2);
  CHECK(run({"coeffs", "--n", "9", "--N", "1"}).code == 2);
  CHECK(run({"coeffs", "--n", "3", "--N", "13"}).code == 2);
  CHECK(run({"operator", "--n", "3", "--N", "0"}).code == 2);
  CHECK(run({"coeffs", "--n", "3", "--N", "2", "--format", "xml"}).code == 2);
  CHECK(run({"verify", "--suite", "everything"}).code == 2);
  CHECK(run({"verify", "--tol", "covariance"}).code == 2);
  CHECK(run({"verify", "--tol", "nonsense=1e-3"}).code == 2);
  CHECK(run({"verify", "--n-min", "4", "--n-max", "2"}).code == 2);
  CHECK(run({}).code == 2);
  const auto e = run({"coeffs", "--n", "9", "--N", "1"});
  CHECK(e.err.find("--n") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("operator json round-trips exactly") {
  for (int n = 1; n <= 4; ++n) {
    for (int N = 1; N <= 4; ++N) {
      const auto r = run({"operator", "--n", std::to_string(n), "--N", std::to_string(N)});
      REQUIRE(r.code == 0);
      const DiffOp parsed = cli::operator_from_json(json::parse(r.out));
      CHECK(parsed == build_EN(n, N));
      CHECK(cli::operator_to_json(parsed, N).dump(2) + "\n" == r.out);
    }
  }
  const json e = cli::operator_to_json(build_EN(2, 1), 1);
  CHECK(e["terms"].size() == 3);
  CHECK(cli::operator_to_json(build_EN(2, 2), 2)["terms"].size() == 7);
}

TEST_CASE("operator json: malformed input is rejected") {
  json doc = cli::operator_to_json(build_E(2), 1);
  json bad = doc;
  bad["variables"] = {"lambda", "x", "y"};
  CHECK_THROWS_AS(cli::operator_from_json(bad), VariableMismatch);
  bad = doc;
  bad["terms"][0]["coefficient"][0][2] = "0";
  CHECK_THROWS_AS(cli::operator_from_json(bad), Error);
  bad = doc;
  bad["terms"][0]["alpha"] = {1};
  CHECK_THROWS_AS(cli::operator_from_json(bad), Error);
}

TEST_CASE("verify: exit codes, determinism and overrides") {
  const auto a = run({"verify", "--suite", "numeric", "--seed", "7"});
  const auto b = run({"verify", "--suite", "numeric", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc["seed"] == 7);
  CHECK(doc["passed"] == true);
  const auto c = run({"verify", "--suite", "numeric", "--seed", "8"});
  CHECK(c.out != a.out);

  const auto loose = run({"verify", "--suite", "numeric", "--n-max", "3", "--tol", "covariance=1e-6"});
  CHECK(loose.code == 0);
  CHECK(json::parse(loose.out)["tolerances"]["covariance"] == 1e-6);

  const auto strict = run({"verify", "--suite", "numeric", "--n-min", "2", "--n-max", "2", "--tol", "covariance=1e-30"});
  CHECK(strict.code == 1);
  CHECK(json::parse(strict.out)["passed"] == false);

  const auto sym = run({"verify", "--suite", "symbolic", "--n-max", "3"});
  CHECK(sym.code == 0);
  for (const auto& r : json::parse(sym.out)["reports"]) CHECK(r["max_rel_err"] == 0.0);
}
