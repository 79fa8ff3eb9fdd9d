#pragma once

// Dirichlet, Rankin-type and symmetric-square L-values with explicit tail
// bounds, plus closed forms for odd quadratic characters.

#include "klingen/foundations.hpp"
#include "klingen/quadforms.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace klingen {

/// A truncated L-series: |true value - value| <= tail_bound under the
/// documented coefficient bounds.
struct LValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::int64_t cutoff = 0;
};

/// coeff * pi^pi_power * sqrt(sqrt_factor), sqrt_factor squarefree.
/// to_double evaluates in 50-digit arithmetic and rounds once.
struct ExactPiMultiple {
  Rational coeff;
  unsigned pi_power = 0;
  std::int64_t sqrt_factor = 1;

  double to_double() const;
  friend bool operator==(const ExactPiMultiple&, const ExactPiMultiple&) = default;
};

/// L(s, chi_D) for a negative fundamental discriminant D and odd s >= 1,
/// from the functional equation and B_{s,chi}.
/// Throws std::invalid_argument for even s or non-fundamental D.
ExactPiMultiple dirichlet_L_exact(std::int64_t D, unsigned s);

/// sum_{n <= cutoff} chi_D(n) n^{-s}. tail_bound is |D| cutoff^{-s} plus the
/// floating-point rounding bound 3 eps s / (s - 1).
LValue dirichlet_L_numeric(std::int64_t D, double s, std::int64_t cutoff);

/// zeta(s) = sum_{n <= cutoff} n^{-s} with tail cutoff^{1-s} / (s - 1) plus
/// the same rounding bound as dirichlet_L_numeric.
LValue zeta_numeric(double s, std::int64_t cutoff);

/// sum_{n <= cutoff} a(n) b(v^2 n) n^{-s}.
///
/// The tail bound assumes |a(n)| <= d(n) n^{(k-1)/2} <= 2 n^{k/2} and
/// b(m) <= theta_constant sqrt(m) + 2, summed by integral comparison.
/// Requires a.size() > cutoff and b.size() > v^2 cutoff.
LValue rankin_naive(std::span<const double> a, std::span<const std::int64_t> b, double s, std::int64_t v, int k,
                    std::int64_t cutoff, double theta_constant);

/// rankin_naive against the theta series of a positive definite T.
LValue rankin_theta(std::span<const double> a, const HalfIntMatrix& T, double s, std::int64_t v, int k,
                    std::int64_t cutoff);

/// zeta(2s - 2k + 2) sum_{n <= cutoff} a(n^2) n^{-s} for a normalized Hecke
/// eigenform with coefficients a, a.size() > cutoff. a(n^2) is obtained from
/// a(p) by the Hecke recursion, so only a(1..cutoff) are read. The tail
/// uses |a(n^2)| <= d(n^2) n^{k-1} <= 4 n^k. Throws std::domain_error
/// unless s > k + 1.
LValue sym2_L(std::span<const double> a, int k, double s, std::int64_t cutoff);

/// (f_T / v)^{2k-3} prod_{p | f_T / v} (1 - p^{1-k} chi_{-Delta_T}(p)).
/// Throws std::invalid_argument unless v divides f_T.
Rational phi_scalar(const DiscriminantSplit& split, std::int64_t v, int k);

}  // namespace klingen
