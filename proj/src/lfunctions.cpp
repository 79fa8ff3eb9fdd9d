#include "klingen/lfunctions.hpp"

#include "klingen/summation.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace klingen {

namespace {

// sum_{n > R} n^{-alpha} <= R^{1-alpha} / (alpha - 1) for alpha > 1.
double power_tail(double R, double alpha) {
  if (alpha <= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(R, 1.0 - alpha) / (alpha - 1.0);
}

// Floating-point error of a compensated sum of n terms +-n^{-s}, each from one
// std::pow call with error below one ulp: at most eps per term for pow, plus
// eps (|S| + sum |t|) for the summation while n eps <= 1/4, with
// sum |t| <= zeta(s) <= s / (s - 1).
double power_sum_rounding(double s) {
  return 3.0 * std::numeric_limits<double>::epsilon() * s / (s - 1.0);
}

}  // namespace

double ExactPiMultiple::to_double() const {
  using Float = boost::multiprecision::mpf_float_50;
  const Float pi = boost::math::constants::pi<Float>();
  const Float v = Float(coeff) * boost::multiprecision::pow(pi, static_cast<int>(pi_power)) *
                  boost::multiprecision::sqrt(Float(sqrt_factor));
  return v.convert_to<double>();
}

ExactPiMultiple dirichlet_L_exact(std::int64_t D, unsigned s) {
  if (D >= 0 || !is_fundamental_discriminant(D))
    throw std::invalid_argument("dirichlet_L_exact: D = " + std::to_string(D) +
                                " is not a negative fundamental discriminant");
  if (s % 2 == 0) throw std::invalid_argument("dirichlet_L_exact: parity mismatch, s must be odd for D < 0");
  const DirichletKronecker chi(D);
  const std::int64_t f = chi.modulus();
  // L(s, chi) = (-1)^{1 + (s-1)/2} (sqrt f / 2) (2 pi / f)^s B_{s,chi} / s!.
  Rational c = generalized_bernoulli(chi, s) * Rational(ipow(Integer(2), s - 1)) /
               Rational(factorial(s) * ipow(Integer(f), s));
  if (((s - 1) / 2) % 2 == 0) c = -c;
  const auto [m, r] = squarefree_split(f);
  return {c * Rational(r), s, m};
}

LValue dirichlet_L_numeric(std::int64_t D, double s, std::int64_t cutoff) {
  if (!(s > 1.0)) throw std::domain_error("dirichlet_L_numeric: s must exceed 1");
  if (cutoff < 1) throw std::invalid_argument("dirichlet_L_numeric: cutoff must be positive");
  const DirichletKronecker chi(D);
  CompensatedSum<double> acc;
  for (std::int64_t n = 1; n <= cutoff; ++n) {
    const int c = chi(n);
    if (c != 0) acc += c * std::pow(static_cast<double>(n), -s);
  }
  const double tail = static_cast<double>(chi.modulus()) * std::pow(static_cast<double>(cutoff), -s);
  return {acc.value(), tail + power_sum_rounding(s), cutoff};
}

LValue zeta_numeric(double s, std::int64_t cutoff) {
  if (!(s > 1.0)) throw std::domain_error("zeta_numeric: s must exceed 1");
  if (cutoff < 1) throw std::invalid_argument("zeta_numeric: cutoff must be positive");
  CompensatedSum<double> acc;
  for (std::int64_t n = cutoff; n >= 1; --n) acc += std::pow(static_cast<double>(n), -s);
  return {acc.value(), power_tail(static_cast<double>(cutoff), s) + power_sum_rounding(s), cutoff};
}

LValue rankin_naive(std::span<const double> a, std::span<const std::int64_t> b, double s, std::int64_t v, int k,
                    std::int64_t cutoff, double theta_constant) {
  if (cutoff < 1 || v < 1) throw std::invalid_argument("rankin_naive: cutoff and v must be positive");
  const auto R = static_cast<std::size_t>(cutoff);
  const auto v2 = static_cast<std::size_t>(v * v);
  if (a.size() <= R) throw std::invalid_argument("rankin_naive: insufficient cusp-form coefficients for cutoff");
  if (b.size() <= v2 * R) throw std::invalid_argument("rankin_naive: insufficient theta coefficients for cutoff");
  CompensatedSum<double> acc;
  bool all_zero = true;
  for (std::size_t n = 1; n <= R; ++n) {
    if (a[n] != 0.0) all_zero = false;
    const std::int64_t bn = b[v2 * n];
    if (a[n] == 0.0 || bn == 0) continue;
    acc += a[n] * static_cast<double>(bn) * std::pow(static_cast<double>(n), -s);
  }
  if (all_zero) return {0.0, 0.0, cutoff};
  // |a(n) b(v^2 n)| <= 2 n^{k/2} (C v sqrt(n) + 2).
  const double Rd = static_cast<double>(cutoff);
  const double tail = 2.0 * theta_constant * static_cast<double>(v) * power_tail(Rd, s - (k + 1) / 2.0) +
                      4.0 * power_tail(Rd, s - k / 2.0);
  return {acc.value(), tail, cutoff};
}

LValue rankin_theta(std::span<const double> a, const HalfIntMatrix& T, double s, std::int64_t v, int k,
                    std::int64_t cutoff) {
  const auto b = theta_coeffs(T, static_cast<std::size_t>(v * v * cutoff + 1));
  return rankin_naive(a, b, s, v, k, cutoff, theta_bound_constant(T));
}

LValue sym2_L(std::span<const double> a, int k, double s, std::int64_t cutoff) {
  if (!(s > k + 1.0)) throw std::domain_error("sym2_L: s outside the region of absolute convergence");
  if (cutoff < 1) throw std::invalid_argument("sym2_L: cutoff must be positive");
  const auto R = static_cast<std::size_t>(cutoff);
  if (a.size() <= R) throw std::invalid_argument("sym2_L: insufficient coefficients for cutoff");

  // a(n^2) for n <= R, multiplicatively from a(p^{2j}).
  std::vector<double> sq(R + 1, 1.0);
  std::vector<bool> composite(R + 1, false);
  bool all_zero = true;
  for (std::size_t p = 2; p <= R; ++p) {
    if (composite[p]) continue;
    for (std::size_t m = p * p; m <= R; m += p) composite[m] = true;
    const double ap = a[p];
    const double pk = std::pow(static_cast<double>(p), k - 1);
    // a(p^{j+1}) = a(p) a(p^j) - p^{k-1} a(p^{j-1}).
    double prev = 1.0, cur = ap;
    std::size_t pe = p;  // p^e with a(p^{2e}) needed
    for (;;) {
      const double next = ap * cur - pk * prev;  // a(p^{2e})
      prev = cur;
      cur = next;
      for (std::size_t m = pe; m <= R; m += pe)
        if ((m / pe) % p != 0) sq[m] *= cur;
      if (pe > R / p) break;
      pe *= p;
      const double odd = ap * cur - pk * prev;  // a(p^{2e+1})
      prev = cur;
      cur = odd;
    }
  }
  for (std::size_t n = 1; n <= R; ++n)
    if (a[n] != 0.0) all_zero = false;
  if (all_zero) return {0.0, 0.0, cutoff};

  CompensatedSum<double> acc;
  for (std::size_t n = R; n >= 1; --n) acc += sq[n] * std::pow(static_cast<double>(n), -s);
  const LValue z = zeta_numeric(2.0 * s - 2.0 * k + 2.0, cutoff);
  const double sum = acc.value();
  const double sum_tail = 4.0 * power_tail(static_cast<double>(cutoff), s - k);
  const double tail = (z.value + z.tail_bound) * sum_tail + (std::abs(sum) + sum_tail) * z.tail_bound;
  return {z.value * sum, tail, cutoff};
}

Rational phi_scalar(const DiscriminantSplit& split, std::int64_t v, int k) {
  if (v < 1 || split.f_T % v != 0) throw std::invalid_argument("phi_scalar: v must divide f_T");
  const std::int64_t u = split.f_T / v;
  Rational r(ipow(Integer(u), static_cast<unsigned>(2 * k - 3)));
  if (u == 1) return r;
  for (const auto& [p, e] : factorize(u)) {
    const int chi = kronecker(-split.Delta_T, p);
    r *= Rational(1) - Rational(Integer(chi), ipow(Integer(p), static_cast<unsigned>(k - 1)));
  }
  return r;
}

}  // namespace klingen
