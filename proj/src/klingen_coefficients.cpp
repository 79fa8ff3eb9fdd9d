#include "klingen/klingen_coefficients.hpp"

#include "klingen/qseries.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <stdexcept>

namespace klingen {

DeltaPower delta_power(std::int64_t Delta, int k) {
  if (Delta <= 0) throw std::invalid_argument("delta_power: Delta must be positive");
  const auto [m, r] = squarefree_split(Delta);
  // Delta^{k-3/2} = Delta^{k-2} * r * sqrt(m).
  return {Rational(ipow(Integer(Delta), static_cast<unsigned>(k - 2)) * r), m};
}

std::vector<HalfIntMatrix> index_p_sublattice_forms(const HalfIntMatrix& T, std::int64_t p) {
  struct Basis {
    std::int64_t x0, x1, y0, y1;  // columns (x0, x1) and (y0, y1)
  };
  std::vector<Basis> bases{{p, 0, 0, 1}};
  for (std::int64_t j = 0; j < p; ++j) bases.push_back({1, j, 0, p});
  std::vector<HalfIntMatrix> out;
  for (const auto& u : bases) {
    const std::int64_t N1 = T(u.x0, u.x1);
    const std::int64_t N2 = T(u.y0, u.y1);
    const std::int64_t B = 2 * T.n1 * u.x0 * u.y0 + T.b * (u.x0 * u.y1 + u.x1 * u.y0) + 2 * T.n2 * u.x1 * u.y1;
    if (N1 % p == 0 && N2 % p == 0 && B % p == 0) out.push_back({N1 / p, B / p, N2 / p});
  }
  return out;
}

KlingenCoefficients::KlingenCoefficients(int k, LSeriesParams params) : k_(k), params_(params) {
  if (!is_builtin_eigenform_weight(k))
    throw std::invalid_argument("KlingenCoefficients: no built-in level one eigenform of weight " + std::to_string(k));
  if (params_.rankin_cutoff < 1 || params_.sym2_cutoff < 1)
    throw std::invalid_argument("KlingenCoefficients: L-series cutoffs must be positive");
  const auto order = static_cast<std::size_t>(std::max(params_.rankin_cutoff, params_.sym2_cutoff)) + 1;
  a_ = eigenform_coefficients_double(k, std::max<std::size_t>(order, 1024));
  sym2_ = sym2_L(cusp_coefficients(), k, 2.0 * k - 2.0, params_.sym2_cutoff);
  const double two_pi = 2.0 * boost::math::constants::pi<double>();
  prefactor_ = to_double(Rational(factorial(static_cast<unsigned>(k - 1)), factorial(static_cast<unsigned>(2 * k - 2)))) *
               std::pow(two_pi, k - 1);
  if ((k / 2) % 2 != 0) prefactor_ = -prefactor_;
}

CoefficientValue KlingenCoefficients::operator()(const HalfIntMatrix& T) {
  if (!T.is_positive_semidefinite()) throw std::invalid_argument("A(T, f): T must be positive semidefinite");
  if (T.is_zero()) return {0.0, 0.0};
  if (T.det2() == 0) {
    const auto m = static_cast<std::size_t>(reduce_singular(T));
    if (m < a_->size()) return {(*a_)[m], 0.0};
    return {(*eigenform_coefficients_double(k_, m + 1))[m], 0.0};
  }
  const HalfIntMatrix r = gauss_reduce(T).reduced;
  const auto key = std::make_tuple(r.n1, r.b, r.n2);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const CoefficientValue v = compute(r);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(key, v);
  return v;
}

CoefficientValue KlingenCoefficients::compute(const HalfIntMatrix& T) {
  const std::int64_t g = T.content();
  if (g == 1) return primitive_formula(T);
  const std::int64_t p = factorize(g).front().first;
  const HalfIntMatrix Tp{T.n1 / p, T.b / p, T.n2 / p};
  const double pd = static_cast<double>(p);
  const double lambda = (*a_)[static_cast<std::size_t>(p)] * (1.0 + std::pow(pd, k_ - 2));
  const CoefficientValue base = (*this)(Tp);
  double value = lambda * base.value;
  double bound = std::abs(lambda) * base.bound;
  const double w1 = std::pow(pd, k_ - 2);
  for (const auto& U : index_p_sublattice_forms(Tp, p)) {
    const CoefficientValue c = (*this)(U);
    value -= w1 * c.value;
    bound += w1 * c.bound;
  }
  if (Tp.content() % p == 0) {
    const CoefficientValue c = (*this)(HalfIntMatrix{Tp.n1 / p, Tp.b / p, Tp.n2 / p});
    const double w2 = std::pow(pd, 2 * k_ - 3);
    value -= w2 * c.value;
    bound += w2 * c.bound;
  }
  return {value, bound};
}

CoefficientValue KlingenCoefficients::primitive_formula(const HalfIntMatrix& T) {
  if (!T.is_positive_definite() || T.content() != 1)
    throw std::invalid_argument("primitive_formula: T must be primitive and positive definite");
  const DiscriminantSplit split = disc_split(T);
  const double Lchi = dirichlet_L_exact(-split.Delta_T, static_cast<unsigned>(k_ - 1)).to_double();
  const DeltaPower dp = delta_power(split.Delta_T, k_);
  const double dpow = to_double(dp.coeff) * std::sqrt(static_cast<double>(dp.sqrt_factor));

  const std::int64_t R = params_.rankin_cutoff;
  const std::int64_t f = split.f_T;
  const auto theta = theta_coeffs(T, static_cast<std::size_t>(f * f * R + 1));
  const double C = theta_bound_constant(T);
  double sum = 0.0, sum_tail = 0.0;
  for (std::int64_t v = 1; v <= f; ++v) {
    if (f % v != 0) continue;
    const double phi = to_double(phi_scalar(split, v, k_));
    const LValue L = rankin_naive(cusp_coefficients(), theta, k_ - 1.0, v, k_, R, C);
    sum += phi * L.value;
    sum_tail += std::abs(phi) * L.tail_bound;
  }
  const double scale = prefactor_ * dpow * Lchi;
  const double Ls = sym2_.value;
  const double value = scale * sum / Ls;
  const double bound =
      std::abs(scale) * (sum_tail / (Ls - sym2_.tail_bound) + std::abs(sum) * sym2_.tail_bound / (Ls * (Ls - sym2_.tail_bound)));
  return {value, bound};
}

}  // namespace klingen
