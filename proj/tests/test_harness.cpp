#include "klingen/harness.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>

using namespace klingen;

TEST_CASE("report finalization") {
  VerificationReport r;
  r.lhs = 1.0 + 1e-7;
  r.rhs = 1.0;
  r.tolerance = 1e-6;
  finalize_report(r);
  CHECK(r.pass);
  CHECK(r.rel_err == doctest::Approx(1e-7));
  r.tolerance = 1e-8;
  finalize_report(r);
  CHECK_FALSE(r.pass);

  VerificationReport z;
  z.lhs = 1e-20;
  z.rhs = 0.0;
  z.tolerance = 1e-12;
  finalize_report(z);
  CHECK(z.pass);
  CHECK(z.abs_err == 1e-20);
}

TEST_CASE("pointwise verification") {
  TruncationParams params;
  const auto reports = verify_pointwise(12, {{UpperHalfPoint(0.0, 1.2), UpperHalfPoint(0.0, 1.2)}}, params);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].pass);
  CHECK(reports[0].lhs.real() == doctest::Approx(0.00116709629058).epsilon(1e-10));
  CHECK(reports[0].rel_err < 1e-10);
  CHECK(reports[0].claim == "pointwise k=12 tau1=0+1.2i tau2=0+1.2i");

  const auto degenerate = verify_pointwise(12, {{UpperHalfPoint(0.3, 1.1), UpperHalfPoint(0.0, 50.0)}}, params);
  const std::complex<double> f = CuspForm::builtin(12, 512)({0.3, 1.1});
  CHECK(std::abs(degenerate[0].lhs - f) < 1e-8);
  CHECK(std::abs(degenerate[0].rhs - f) < 1e-8);
  CHECK(degenerate[0].pass);
  CHECK_THROWS_AS(verify_pointwise(14, standard_points(), params), std::invalid_argument);
}

TEST_CASE("critical-value identities") {
  TruncationParams params;
  HarnessOptions options;
  options.rankin_cutoff = 20000;
  const auto c13 = verify_cor13(16, params, 1e-5, options);
  CHECK(c13.pass);
  CHECK(c13.claim == "cor13 k=16");

  // The coprime-index identity at (1, 1) restates the first one.
  const auto c14 = verify_cor14(16, 1, 1, params, 1e-4, options);
  CHECK(c14.pass);
  const double C = to_double(Rational(factorial(30), factorial(15))) / std::pow(2.0 * M_PI, 15);
  CHECK(c14.lhs.real() == doctest::Approx(C * c13.rhs.real()).epsilon(1e-12));
  CHECK(c14.rhs.real() == doctest::Approx(C * c13.lhs.real()).epsilon(1e-9));
  CHECK_THROWS_AS(verify_cor14(12, 2, 2, params), std::invalid_argument);
  CHECK_THROWS_AS(verify_cor14(12, 0, 1, params), std::invalid_argument);
}

TEST_CASE("paramodular properties at level one") {
  TruncationParams params;
  const auto r = verify_para_properties(CuspForm::builtin(12, 512), 12, 1, params);
  REQUIRE(r.size() == 1);
  CHECK(r[0].pass);
  CHECK(r[0].abs_err == 0.0);
  CHECK_THROWS_AS(verify_para_properties(CuspForm::builtin(12, 512), 12, 2, params), std::invalid_argument);
}

TEST_CASE("json reports") {
  TruncationParams params;
  const auto reports = verify_pointwise(12, standard_points(), params);
  const std::string text = reports_to_json(reports);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["schema"] == 1);
  REQUIRE(doc["reports"].size() == 3);
  const auto& first = doc["reports"][0];
  for (const char* key : {"claim", "lhs", "rhs", "abs_err", "rel_err", "tolerance", "pass", "truncation", "conventions",
                          "runtime_ms"})
    CHECK(first.contains(key));
  CHECK(first["truncation"]["coset_height"] == 40);
  CHECK(first["conventions"].size() == standard_conventions().size());
  CHECK_FALSE(nlohmann::json::parse(reports_to_json(reports, false))["reports"][0].contains("runtime_ms"));

  HarnessOptions two;
  two.threads = 2;
  CHECK(reports_to_json(verify_pointwise(12, standard_points(), params, 1e-6, two), false) ==
        reports_to_json(reports, false));
}
