#pragma once

// Fourier coefficients A(T, f) of the degree-two Klingen Eisenstein series
// attached to a level one eigenform f.

#include "klingen/lfunctions.hpp"
#include "klingen/quadforms.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

namespace klingen {

struct LSeriesParams {
  std::int64_t rankin_cutoff = 2000;
  std::int64_t sym2_cutoff = 1000;
};

struct CoefficientValue {
  double value = 0.0;
  double bound = 0.0;  // propagated L-series tail bounds
};

/// Delta^{k-3/2} = coeff * sqrt(sqrt_factor), sqrt_factor squarefree.
struct DeltaPower {
  Rational coeff;
  std::int64_t sqrt_factor = 1;
};
DeltaPower delta_power(std::int64_t Delta, int k);

/// The forms T[U] / p for the p + 1 index-p sublattices U Z^2 of Z^2 on
/// which T[U] is divisible by p.
std::vector<HalfIntMatrix> index_p_sublattice_forms(const HalfIntMatrix& T, std::int64_t p);

/// A(T, f) for the built-in eigenform of weight k:
///   0 for T = 0; a(m) for singular T of content m;
///   for primitive positive definite T,
///     (-1)^{k/2} (k-1)!/(2k-2)! (2 pi)^{k-1} Delta^{k-3/2}
///       L(k-1, chi_{-Delta}) / L(2k-2, Sym^2 f)
///       sum_{v | f_T} phi_scalar(T, v) L(k-1, f x theta_T^{(v)});
///   for imprimitive T = p T', from the degree-two Hecke operator T(p) with
///   eigenvalue a(p)(1 + p^{k-2}):
///     A(p T') = lambda_p A(T') - p^{k-2} sum_U A(T'[U]/p) - p^{2k-3} A(T'/p).
/// Values are cached by GL(2,Z) class; the object is safe to share between
/// threads.
class KlingenCoefficients {
public:
  explicit KlingenCoefficients(int k, LSeriesParams params = {});

  int weight() const { return k_; }
  const LSeriesParams& params() const { return params_; }
  const LValue& sym2() const { return sym2_; }
  std::span<const double> cusp_coefficients() const { return {a_->data(), a_->size()}; }
  /// (-1)^{k/2} (k-1)! (2 pi)^{k-1} / (2k-2)!.
  double prefactor() const { return prefactor_; }

  CoefficientValue operator()(const HalfIntMatrix& T);

  /// A(T) for primitive positive definite T straight from the L-value
  /// formula, skipping the Hecke recursion. Exposed for testing.
  CoefficientValue primitive_formula(const HalfIntMatrix& T);

private:
  CoefficientValue compute(const HalfIntMatrix& reduced);

  int k_;
  LSeriesParams params_;
  std::shared_ptr<const std::vector<double>> a_;
  LValue sym2_;
  double prefactor_;
  std::mutex mutex_;
  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, CoefficientValue> cache_;
};

}  // namespace klingen
