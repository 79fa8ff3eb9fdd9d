#pragma once

// Verification scenarios for the pullback identity, the critical-value
// identities derived from it, and the paramodular sums, with JSON reports.

#include "klingen/evaluator.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace klingen {

struct VerificationReport {
  std::string claim;
  std::complex<double> lhs;
  std::complex<double> rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  TruncationParams truncation;
  std::vector<std::string> conventions;
  std::int64_t runtime_ms = 0;
};

/// Fills abs_err, rel_err and pass. Relative error is measured against
/// |rhs|; when |rhs| is below `near_zero` the absolute error is compared
/// against the tolerance instead.
void finalize_report(VerificationReport& r, double near_zero = 1e-300);

/// Convention resolutions recorded in every report.
std::vector<std::string> standard_conventions();

struct HarnessOptions {
  unsigned threads = 1;
  LSeriesParams klingen_lseries{};   // L-series cutoffs inside A(T, f)
  std::int64_t rankin_cutoff = 100000;
  std::int64_t sym2_cutoff = 1000;
  double extraction_height = 1.2;
  double prune_rel = 1e-17;          // see PullbackOptions::prune_rel
};

using PointPair = std::pair<UpperHalfPoint, UpperHalfPoint>;

/// The three standard test points (1.2i, 1.2i), (0.3+1.1i, 1.5i), (0.7+1.3i, -0.2+1.2i).
std::vector<PointPair> standard_points();

/// eval_klingen_diag against eval_pullback_rhs (N = 1), one report per point.
std::vector<VerificationReport> verify_pointwise(int k, const std::vector<PointPair>& points,
                                                 const TruncationParams& params, double tolerance = 1e-6,
                                                 const HarnessOptions& options = {});

/// LHS = 4/zeta(1-k) + A_f(1,1); RHS = 2 + the two nonsingular L-value terms.
VerificationReport verify_cor13(int k, const TruncationParams& params, double tolerance = 1e-5,
                                const HarnessOptions& options = {});

/// The coprime-index identity for (n1, n2). Throws std::invalid_argument
/// unless gcd(n1, n2) = 1.
VerificationReport verify_cor14(int k, std::int64_t n1, std::int64_t n2, const TruncationParams& params,
                                double tolerance = 1e-4, const HarnessOptions& options = {});

/// For N = 1: the paramodular and Siegel sums agree bit for bit. For N > 1:
/// weight-(k, k) invariance of the paramodular sum under tau1 -> tau1 + 1 and
/// under the Gamma_0(N^2) generator [[1, 0], [N^2, 1]] in either variable.
std::vector<VerificationReport> verify_para_properties(const CuspForm& f, int k, std::int64_t N,
                                                       const TruncationParams& params, double tolerance = 1e-6,
                                                       const HarnessOptions& options = {});

/// {"schema": 1, "reports": [...]} with keys in a fixed order.
std::string reports_to_json(const std::vector<VerificationReport>& reports, bool include_runtime = true);

}  // namespace klingen
