#include "klingen/harness.hpp"

#include "klingen/qseries.hpp"
#include "klingen/summation.hpp"

#include <boost/math/constants/constants.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace klingen {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::string point_label(const UpperHalfPoint& t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", t.x, t.y);
  return buf;
}

double pow_two_pi(int e) { return std::pow(2.0 * boost::math::constants::pi<double>(), e); }

// (2k-2)! / ((2 pi)^{k-1} (k-1)!).
double cor14_constant(int k) {
  const Rational r(factorial(static_cast<unsigned>(2 * k - 2)), factorial(static_cast<unsigned>(k - 1)));
  return to_double(r) / pow_two_pi(k - 1);
}

void require_builtin_weight(int k, const char* where) {
  if (!is_builtin_eigenform_weight(k))
    throw std::invalid_argument(std::string(where) + ": no built-in level one eigenform of weight " + std::to_string(k));
}

PullbackOptions pullback_options(const HarnessOptions& options) {
  PullbackOptions p;
  p.threads = options.threads;
  p.prune_rel = options.prune_rel;
  return p;
}

nlohmann::ordered_json complex_json(const std::complex<double>& z) { return {z.real(), z.imag()}; }

}  // namespace

void finalize_report(VerificationReport& r, double near_zero) {
  r.abs_err = std::abs(r.lhs - r.rhs);
  const double scale = std::abs(r.rhs);
  if (scale > near_zero) {
    r.rel_err = r.abs_err / scale;
    r.pass = r.rel_err <= r.tolerance;
  } else {
    r.rel_err = r.abs_err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    r.pass = r.abs_err <= r.tolerance;
  }
}

std::vector<std::string> standard_conventions() {
  return {
      "sym2: L(s, Sym^2 f) = zeta(2s - 2k + 2) sum_n a(n^2) n^-s",
      "singular T: A(T, f) = a(content(T)), A(0, f) = 0",
      "character: chi is the Kronecker symbol of the fundamental discriminant -Delta(T)",
      "imprimitive T: degree-two Hecke operator T(p) recursion with eigenvalue a(p)(1 + p^(k-2))",
      "T_r index: c, d >= 1 coprime, summed with prefactor 2",
      "E1 at s = k - 2: sum over (c, d) coprime with c in N Z, c > 0 or (c, d) = (0, 1)",
  };
}

std::vector<PointPair> standard_points() {
  return {
      {UpperHalfPoint(0.0, 1.2), UpperHalfPoint(0.0, 1.2)},
      {UpperHalfPoint(0.3, 1.1), UpperHalfPoint(0.0, 1.5)},
      {UpperHalfPoint(0.7, 1.3), UpperHalfPoint(-0.2, 1.2)},
  };
}

std::vector<VerificationReport> verify_pointwise(int k, const std::vector<PointPair>& points,
                                                 const TruncationParams& params, double tolerance,
                                                 const HarnessOptions& options) {
  require_builtin_weight(k, "verify_pointwise");
  KlingenCoefficients coeffs(k, options.klingen_lseries);
  const CuspForm f = CuspForm::builtin(k, params.qexp_order);
  std::vector<VerificationReport> out;
  for (const auto& [t1, t2] : points) {
    const auto start = Clock::now();
    VerificationReport r;
    r.claim = "pointwise k=" + std::to_string(k) + " tau1=" + point_label(t1) + " tau2=" + point_label(t2);
    r.lhs = eval_klingen_diag(coeffs, t1, t2, params.fourier_cutoff).value;
    r.rhs = eval_pullback_rhs(f, k, 1, t1, t2, params, pullback_options(options)).value;
    r.tolerance = tolerance;
    r.truncation = params;
    r.conventions = standard_conventions();
    finalize_report(r);
    r.runtime_ms = elapsed_ms(start);
    out.push_back(std::move(r));
  }
  return out;
}

VerificationReport verify_cor13(int k, const TruncationParams& params, double tolerance,
                                const HarnessOptions& options) {
  require_builtin_weight(k, "verify_cor13");
  const auto start = Clock::now();
  const CuspForm f = CuspForm::builtin(k, params.qexp_order);
  const double h = options.extraction_height;
  const BoundedValue Af = extract_Af(f, k, 1, 1, params, h, h, pullback_options(options));

  const std::int64_t R = options.rankin_cutoff;
  const auto a = eigenform_coefficients_double(k, static_cast<std::size_t>(std::max(R, options.sym2_cutoff)) + 1);
  const std::span<const double> as(a->data(), a->size());
  const LValue sym2 = sym2_L(as, k, 2.0 * k - 2.0, options.sym2_cutoff);
  const double s = k - 1.0;
  const double L4 = dirichlet_L_exact(-4, static_cast<unsigned>(k - 1)).to_double();
  const double L3 = dirichlet_L_exact(-3, static_cast<unsigned>(k - 1)).to_double();
  const double R1 = rankin_theta(as, HalfIntMatrix{1, 0, 1}, s, 1, k, R).value;
  const double R2 = rankin_theta(as, HalfIntMatrix{1, 1, 1}, s, 1, k, R).value;
  const double c4 = std::ldexp(1.0, 2 * k - 3);
  const double c3 = 2.0 * std::pow(3.0, k - 2) * std::sqrt(3.0);
  double pref = to_double(Rational(factorial(static_cast<unsigned>(k - 1)), factorial(static_cast<unsigned>(2 * k - 2)))) *
                pow_two_pi(k - 1) / sym2.value;
  if ((k / 2) % 2 != 0) pref = -pref;

  VerificationReport r;
  r.claim = "cor13 k=" + std::to_string(k);
  r.lhs = 4.0 / to_double(zeta_neg_odd(k)) + Af.value;
  r.rhs = 2.0 + pref * (c4 * L4 * R1 + c3 * L3 * R2);
  r.tolerance = tolerance;
  r.truncation = params;
  r.conventions = standard_conventions();
  finalize_report(r);
  r.runtime_ms = elapsed_ms(start);
  return r;
}

VerificationReport verify_cor14(int k, std::int64_t n1, std::int64_t n2, const TruncationParams& params,
                                double tolerance, const HarnessOptions& options) {
  if (n1 < 1 || n2 < 1 || std::gcd(n1, n2) != 1)
    throw std::invalid_argument("verify_cor14: requires n1, n2 >= 1 with gcd(n1, n2) = 1");
  require_builtin_weight(k, "verify_cor14");
  const auto start = Clock::now();
  const CuspForm f = CuspForm::builtin(k, params.qexp_order);
  const double h = options.extraction_height;
  const BoundedValue Af = extract_Af(f, k, n1, n2, params, h, h, pullback_options(options));

  KlingenCoefficients coeffs(k, LSeriesParams{options.rankin_cutoff, options.sym2_cutoff});
  CompensatedSum<double> total;
  for (const auto& T : lambda_set(n1, n2)) total += coeffs(T).value;
  const auto a = coeffs.cusp_coefficients();
  const double C = cor14_constant(k);
  const double sig = a[static_cast<std::size_t>(n1)] * to_double(divisor_sum(static_cast<unsigned>(k - 1), n2)) +
                     a[static_cast<std::size_t>(n2)] * to_double(divisor_sum(static_cast<unsigned>(k - 1), n1));

  VerificationReport r;
  r.claim = "cor14 k=" + std::to_string(k) + " n1=" + std::to_string(n1) + " n2=" + std::to_string(n2);
  r.lhs = C * total.value();
  r.rhs = C * (2.0 / to_double(zeta_neg_odd(k)) * sig + Af.value);
  r.tolerance = tolerance;
  r.truncation = params;
  r.conventions = standard_conventions();
  finalize_report(r);
  r.runtime_ms = elapsed_ms(start);
  return r;
}

std::vector<VerificationReport> verify_para_properties(const CuspForm& f, int k, std::int64_t N,
                                                       const TruncationParams& params, double tolerance,
                                                       const HarnessOptions& options) {
  if (N < 1) throw std::invalid_argument("verify_para_properties: N must be positive");
  if (f.weight() != k) throw std::invalid_argument("verify_para_properties: weight of f does not match k");
  if (f.level() != N) throw std::invalid_argument("verify_para_properties: level of f does not match N");
  const PullbackOptions po = pullback_options(options);
  const std::string tag = "para k=" + std::to_string(k) + " N=" + std::to_string(N);
  std::vector<VerificationReport> out;
  auto report = [&](std::string claim, std::complex<double> lhs, std::complex<double> rhs, double tol,
                    Clock::time_point start) {
    VerificationReport r;
    r.claim = tag + " " + std::move(claim);
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = tol;
    r.truncation = params;
    r.conventions = standard_conventions();
    finalize_report(r);
    r.runtime_ms = elapsed_ms(start);
    out.push_back(std::move(r));
  };

  if (N == 1) {
    const auto start = Clock::now();
    const UpperHalfPoint t1(0.3, 1.1), t2(0.0, 1.5);
    const PullbackValue para = eval_pullback_rhs_para(f, k, 1, t1, t2, params, po);
    const PullbackValue siegel = eval_pullback_rhs(f, k, 1, t1, t2, params, po);
    const bool identical = para.value == siegel.value && para.tr_sum == siegel.tr_sum &&
                           para.e1_terms == siegel.e1_terms && para.terms == siegel.terms;
    report("siegel coincidence", para.value, siegel.value, 0.0, start);
    out.back().pass = identical;
    return out;
  }

  const double N2 = static_cast<double>(N * N);
  const std::complex<double> t1(-0.8 / N2, 1.2 / N2);
  const UpperHalfPoint p1(t1.real(), t1.imag()), p2(0.0, 1.2);
  const std::complex<double> base = eval_pullback_rhs_para(f, k, N, p1, p2, params, po).value;
  {
    const auto start = Clock::now();
    const std::complex<double> moved = eval_pullback_rhs_para(f, k, N, UpperHalfPoint(t1.real() + 1.0, t1.imag()), p2, params, po).value;
    report("translation tau1", moved, base, tolerance, start);
  }
  {
    // gamma = [[1, 0], [N^2, 1]] on tau1.
    const auto start = Clock::now();
    const auto m = moebius<double>(1, 0, N * N, 1, t1);
    const std::complex<double> moved =
        std::pow(m.j, -k) * eval_pullback_rhs_para(f, k, N, UpperHalfPoint(m.image.real(), m.image.imag()), p2, params, po).value;
    report("gamma0 generator tau1", moved, base, tolerance, start);
  }
  {
    // Same generator on tau2, at a point where it moves tau2 substantially.
    const auto start = Clock::now();
    const UpperHalfPoint q1(0.0, 1.2);
    const std::complex<double> base2 = eval_pullback_rhs_para(f, k, N, q1, p1, params, po).value;
    const auto m = moebius<double>(1, 0, N * N, 1, t1);
    const std::complex<double> moved =
        std::pow(m.j, -k) * eval_pullback_rhs_para(f, k, N, q1, UpperHalfPoint(m.image.real(), m.image.imag()), params, po).value;
    report("gamma0 generator tau2", moved, base2, tolerance, start);
  }
  return out;
}

std::string reports_to_json(const std::vector<VerificationReport>& reports, bool include_runtime) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["claim"] = r.claim;
    j["lhs"] = complex_json(r.lhs);
    j["rhs"] = complex_json(r.rhs);
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["truncation"] = {{"coset_height", r.truncation.coset_height},
                       {"cd_bound", r.truncation.cd_bound},
                       {"fourier_cutoff", r.truncation.fourier_cutoff},
                       {"qexp_order", r.truncation.qexp_order},
                       {"grid_size", r.truncation.grid_size}};
    j["conventions"] = r.conventions;
    if (include_runtime) j["runtime_ms"] = r.runtime_ms;
    arr.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["reports"] = std::move(arr);
  return doc.dump(2) + "\n";
}

}  // namespace klingen
