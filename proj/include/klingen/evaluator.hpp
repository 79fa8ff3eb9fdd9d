#pragma once

// Pointwise evaluation of elliptic cusp forms, the holomorphic Eisenstein
// series E_1, the diagonal restriction of the Klingen Eisenstein series from
// its Fourier expansion, and the pullback sums over coset representatives.

#include "klingen/klingen_coefficients.hpp"
#include "klingen/qseries.hpp"
#include "klingen/symplectic.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace klingen {

struct UpperHalfPoint {
  double x = 0.0;
  double y = 1.0;

  UpperHalfPoint() = default;
  /// Throws std::invalid_argument unless y > 0.
  UpperHalfPoint(double x, double y);
  std::complex<double> tau() const { return {x, y}; }
};

struct TruncationParams {
  std::int64_t coset_height = 40;
  std::int64_t cd_bound = 6;
  std::int64_t fourier_cutoff = 8;
  std::size_t qexp_order = 512;
  std::int64_t grid_size = 8;
};

/// A floating value with an error estimate. `heuristic` marks estimates
/// that are not proven bounds.
struct BoundedValue {
  std::complex<double> value;
  double bound = 0.0;
  bool heuristic = false;
};

/// sum_{n < order} a(n) e^{2 pi i n tau}, bounded by assuming
/// |a(n)| <= d(n) n^{(k-1)/2} beyond the stored coefficients. The bound is
/// +infinity when the tail does not converge geometrically at the stored order.
BoundedValue eval_cuspform(const QSeries& f, const UpperHalfPoint& tau);

/// Plain truncated q-series sum_{n < count} a[n] q^n.
template <typename Real>
std::complex<Real> eval_qseries(const std::vector<Real>& a, std::size_t count, const std::complex<Real>& tau) {
  const Real two_pi = Real(2) * Real(3.14159265358979323846264338327950288L);
  const std::complex<Real> q = std::exp(std::complex<Real>(0, two_pi) * tau);
  count = std::min(count, a.size());
  std::complex<Real> acc(0);
  for (std::size_t n = count; n-- > 0;) acc = acc * q + a[n];
  return acc;
}

/// An elliptic cusp form prepared for fast floating evaluation.
///
/// Level one forms are evaluated anywhere on the upper half-plane by moving
/// the argument into the standard fundamental domain first. Higher level
/// forms are evaluated from their q-series; arguments whose imaginary part is
/// below usable_height() are reported as not evaluable.
class CuspForm {
public:
  /// The built-in eigenform of weight k with `order` stored coefficients.
  static CuspForm builtin(int k, std::size_t order);
  static CuspForm from_series(const QSeries& f);

  int weight() const { return k_; }
  std::int64_t level() const { return level_; }
  const std::vector<double>& coefficients() const { return a_; }

  std::complex<double> operator()(const std::complex<double>& tau) const;

  /// Smallest imaginary part at which operator() is accurate to double precision.
  double usable_height() const { return usable_height_; }

  /// S with y^{k/2} |f(x + i y)| <= S on the whole upper half-plane, from
  /// an interval scan of sum |a(n)| e^{-2 pi n y} over y >= sqrt(3)/2
  /// (level one), or over y >= usable_height() (higher level, heuristic).
  double sup_norm() const { return sup_norm_; }
  bool sup_norm_is_rigorous() const { return level_ == 1; }

private:
  CuspForm(std::vector<double> a, int k, std::int64_t level);

  std::vector<double> a_;
  int k_;
  std::int64_t level_;
  double usable_height_ = 0.0;
  double sup_norm_ = 0.0;
};

/// sum over coset_reps(N, M) of |c tau + d|^{-(s+2-k)} (c tau + d)^{-k}.
/// The bound is the heuristic estimate C(tau) M^{2-k} of the omitted reps.
BoundedValue eval_E1(double s, int k, std::int64_t N, const UpperHalfPoint& tau, std::int64_t M);

/// sum_{n1, n2 <= cutoff} sum_{T in Lambda(n1, n2)} A(T, f) q1^n1 q2^n2.
///
/// The bound adds the propagated L-series tails of every A(T) used and an
/// envelope estimate of the omitted coefficients, |A(T)| <= K det(2T)^{k-1}
/// with K ten times the largest ratio observed inside the box (heuristic).
BoundedValue eval_klingen_diag(KlingenCoefficients& coeffs, const UpperHalfPoint& tau1, const UpperHalfPoint& tau2,
                               std::int64_t cutoff);

/// Breakdown of a pullback evaluation.
struct PullbackValue {
  std::complex<double> value;       // full right-hand side
  std::complex<double> e1_terms;    // E1(tau1) f(tau2) + E1(tau2) f(tau1)
  std::complex<double> tr_sum;      // 2 sum_{c,d} sum_{gamma1, gamma2} ...
  double pruned_bound = 0.0;        // proven bound on the pruned coset terms
  double truncation_estimate = 0.0; // heuristic: omitted cosets and (c, d) shells
  double unevaluable_bound = 0.0;   // terms below the form's usable height
  std::size_t terms = 0;            // summands actually evaluated

  double bound() const { return pruned_bound + truncation_estimate + unevaluable_bound; }
};

struct PullbackOptions {
  unsigned threads = 1;
  /// Coset terms whose proven bound falls below prune_rel * |e1_terms| are skipped.
  double prune_rel = 1e-17;
  /// Alternative representatives (a + m c, b + m d); used to test that sums
  /// do not depend on the choice.
  std::int64_t representative_shift = 0;
};

/// E1(tau1) f(tau2) + E1(tau2) f(tau1)
///   + 2 sum_{c, d >= 1, (c, d) = 1} sum_{gamma1, gamma2} j(gamma1, tau1)^{-k} j(gamma2, tau2)^{-k}
///       f(d^2 gamma1<tau1> + c^2 gamma2<tau2>)
/// with gamma_i over coset_reps(N, M) and c, d <= C, at s = k - 2.
PullbackValue eval_pullback_rhs(const CuspForm& f, int k, std::int64_t N, const UpperHalfPoint& tau1,
                                const UpperHalfPoint& tau2, const TruncationParams& params,
                                const PullbackOptions& options = {});

/// The paramodular variant: gamma1 over Gamma_infty \ SL(2,Z), gamma2 over
/// Gamma_infty \ Gamma_0(N^2), and E1 of level N^2. For N = 1 this reduces
/// to eval_pullback_rhs term by term.
PullbackValue eval_pullback_rhs_para(const CuspForm& f, int k, std::int64_t N, const UpperHalfPoint& tau1,
                                     const UpperHalfPoint& tau2, const TruncationParams& params,
                                     const PullbackOptions& options = {});

/// A_f(n1, n2) by grid quadrature of the T_r sum over x1, x2 in [0, 1) at
/// fixed heights, rescaled by e^{2 pi (n1 y1 + n2 y2)}. The bound combines
/// aliasing e^{-2 pi G min(y1, y2)} times a coefficient envelope with the
/// pointwise truncation estimates (heuristic).
BoundedValue extract_Af(const CuspForm& f, int k, std::int64_t n1, std::int64_t n2, const TruncationParams& params,
                        double y1 = 1.2, double y2 = 1.2, const PullbackOptions& options = {});

}  // namespace klingen
