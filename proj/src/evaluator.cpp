#include "klingen/evaluator.hpp"

#include "klingen/parallel.hpp"
#include "klingen/summation.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace klingen {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr double kTwoPi = 2.0 * kPi;
const double kInf = std::numeric_limits<double>::infinity();

// sum_{n >= n0} 2 n^{k/2} r^n, r = e^{-2 pi y}, by a geometric majorant.
double deligne_tail(std::size_t n0, int k, double y) {
  if (n0 == 0) n0 = 1;
  const double n = static_cast<double>(n0);
  const double half_k = std::max(k, 0) / 2.0;
  const double rho = std::pow((n + 1.0) / n, half_k) * std::exp(-kTwoPi * y);
  if (rho >= 1.0) return kInf;
  return 2.0 * std::exp(half_k * std::log(n) - kTwoPi * y * n) / (1.0 - rho);
}

std::vector<double> to_doubles(const QSeries& f) {
  std::vector<double> a(f.order());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = to_double(f[i]);
  return a;
}

// sup over y in [y_lo, y_hi] of y^{k/2} sum |a(n)| e^{-2 pi n y}, overestimated
// on each grid interval by pairing the right endpoint power with the left
// endpoint exponential.
double envelope_sup(const std::vector<double>& a, int k, double y_lo, double y_hi, double step) {
  const std::size_t terms = std::min<std::size_t>(a.size(), 400);
  double best = 0.0;
  for (double y = y_lo; y < y_hi; y += step) {
    double s = 0.0;
    for (std::size_t n = 1; n < terms; ++n) s += std::abs(a[n]) * std::exp(-kTwoPi * static_cast<double>(n) * y);
    s += deligne_tail(terms, k, y);
    best = std::max(best, std::pow(y + step, k / 2.0) * s);
  }
  return best;
}

// Number of q-series terms after which the unseen tail at height y drops
// below 2^-60 of the leading term size, capped at `available`.
std::size_t terms_for_height(double y, int k, std::size_t available) {
  const double lhs_const = 61.0 * std::log(2.0);
  const double half_k = std::max(k, 0) / 2.0;
  double n = 2.0;
  for (int it = 0; it < 8; ++it) n = 1.0 + (lhs_const + half_k * std::log(n)) / (kTwoPi * y);
  const double capped = std::min(std::ceil(n) + 1.0, static_cast<double>(available));
  return static_cast<std::size_t>(capped);
}

struct OrbitEntry {
  double height;              // Im gamma<tau>
  std::complex<double> jk;    // j(gamma, tau)^{-k}
  std::complex<double> image; // gamma<tau>
};

std::vector<OrbitEntry> orbit(const std::vector<CosetRep>& reps, const std::complex<double>& tau, int k,
                              std::int64_t shift) {
  std::vector<OrbitEntry> out;
  out.reserve(reps.size());
  for (const auto& g : reps) {
    const auto m = moebius<double>(g.a + shift * g.c, g.b + shift * g.d, g.c, g.d, tau);
    out.push_back({m.image.imag(), std::pow(m.j, -k), m.image});
  }
  std::stable_sort(out.begin(), out.end(), [](const OrbitEntry& u, const OrbitEntry& v) { return u.height > v.height; });
  return out;
}

std::complex<double> e1_sum(const std::vector<CosetRep>& reps, const std::complex<double>& tau, int k) {
  CompensatedComplexSum<double> acc;
  for (const auto& g : reps) acc += std::pow(std::complex<double>(double(g.c)) * tau + double(g.d), -k);
  return acc.value();
}

// Heuristic size of the E1 terms beyond height M: about 4 r terms of size
// (r m)^{-k} on each shell r > M, with m a lower bound for |c tau + d| / r.
double e1_tail_estimate(int k, const std::complex<double>& tau, std::int64_t M) {
  const double m = std::min(1.0, tau.imag()) / (1.0 + std::abs(tau.real()));
  return 4.0 * std::pow(m, -k) * std::pow(static_cast<double>(M), 2.0 - k) / (k - 2.0);
}

struct ShellResult {
  CompensatedComplexSum<double> sum;
  double pruned = 0.0;
  double unevaluable = 0.0;
  double magnitude = 0.0;
  std::size_t terms = 0;
};

PullbackValue pullback_core(const CuspForm& f, int k, const std::vector<CosetRep>& reps1,
                            const std::vector<CosetRep>& reps2, const std::vector<CosetRep>& e1_reps,
                            const UpperHalfPoint& tau1, const UpperHalfPoint& tau2, const TruncationParams& params,
                            const PullbackOptions& options, bool include_e1) {
  if (k <= 4 || k % 2 != 0) throw std::invalid_argument("pullback: k must be even and > 4");
  if (f.weight() != k) throw std::invalid_argument("pullback: weight of f does not match k");
  const std::complex<double> t1 = tau1.tau(), t2 = tau2.tau();
  PullbackValue out;

  const std::complex<double> f1 = f(t1), f2 = f(t2);
  const std::complex<double> E1a = e1_sum(e1_reps, t1, k);
  const std::complex<double> E1b = e1_sum(e1_reps, t2, k);
  out.e1_terms = E1a * f2 + E1b * f1;

  const auto L1 = orbit(reps1, t1, k, options.representative_shift);
  const auto L2 = orbit(reps2, t2, k, options.representative_shift);
  const double S = f.sup_norm();
  const double Y = std::pow(tau1.y * tau2.y, -k / 2.0);
  double scale = std::abs(out.e1_terms);
  if (!(scale > 0.0)) scale = S * Y;
  const double eps = options.prune_rel * scale;
  const double quarter_k = k / 4.0;
  auto power_sum = [&](const std::vector<OrbitEntry>& L, std::size_t from) {
    double s = 0.0;
    for (std::size_t i = L.size(); i-- > from;) s += std::pow(L[i].height, quarter_k);
    return s;
  };
  const double A1 = power_sum(L1, 0), A2 = power_sum(L2, 0);

  struct Pair {
    std::int64_t c, d;
  };
  std::vector<Pair> pairs;
  for (std::int64_t c = 1; c <= params.cd_bound; ++c)
    for (std::int64_t d = 1; d <= params.cd_bound; ++d)
      if (std::gcd(c, d) == 1) pairs.push_back({c, d});

  const double usable = f.usable_height();
  const bool level_one = f.level() == 1;
  std::vector<ShellResult> shells(pairs.size());
  parallel_for(pairs.size(), options.threads, [&](std::size_t idx) {
    const double c = static_cast<double>(pairs[idx].c), d = static_cast<double>(pairs[idx].d);
    const double c2 = c * c, d2 = d * d;
    // Term bound S Y min(h1/c^2, h2/d^2)^{k/2}: keep the prefix of each
    // height-sorted orbit that can still exceed eps.
    auto keep = [&](const std::vector<OrbitEntry>& L, double w) {
      std::size_t n = 0;
      while (n < L.size() && S * Y * std::pow(L[n].height / w, k / 2.0) >= eps) ++n;
      return n;
    };
    const std::size_t n1 = keep(L1, c2), n2 = keep(L2, d2);
    ShellResult& r = shells[idx];
    const double D1 = power_sum(L1, n1), D2 = power_sum(L2, n2);
    r.pruned = S * Y * std::pow(c * d, -k / 2.0) * (D1 * A2 + A1 * D2);
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        const std::complex<double> w = d2 * L1[i].image + c2 * L2[j].image;
        const std::complex<double> jj = L1[i].jk * L2[j].jk;
        if (!level_one && w.imag() < usable) {
          r.unevaluable += S * std::pow(w.imag(), -k / 2.0) * std::abs(jj);
          continue;
        }
        const std::complex<double> t = jj * f(w);
        r.sum += t;
        r.magnitude += std::abs(t);
        ++r.terms;
      }
    }
  });

  CompensatedComplexSum<double> tr;
  double last_shell = 0.0;
  for (std::size_t i = 0; i < shells.size(); ++i) {
    tr += shells[i].sum;
    out.pruned_bound += 2.0 * shells[i].pruned;
    out.unevaluable_bound += 2.0 * shells[i].unevaluable;
    out.terms += shells[i].terms;
    if (std::max(pairs[i].c, pairs[i].d) == params.cd_bound) last_shell += shells[i].magnitude;
  }
  out.tr_sum = 2.0 * tr.value();
  out.value = include_e1 ? out.e1_terms + out.tr_sum : out.tr_sum;

  // Heuristic: the omitted (c, d) shells and cosets above height M.
  const double C = static_cast<double>(params.cd_bound);
  const double shell_tail = 2.0 * last_shell * C / (k - 3.0);
  const std::int64_t M = params.coset_height;
  const double coset_tail = std::abs(f2) * e1_tail_estimate(k, t1, M) + std::abs(f1) * e1_tail_estimate(k, t2, M);
  out.truncation_estimate = shell_tail + (include_e1 ? coset_tail : 0.0) +
                            std::abs(out.tr_sum) * (e1_tail_estimate(k, t1, M) + e1_tail_estimate(k, t2, M));
  return out;
}

}  // namespace

UpperHalfPoint::UpperHalfPoint(double x_, double y_) : x(x_), y(y_) {
  if (!(y_ > 0.0)) throw std::invalid_argument("UpperHalfPoint: imaginary part must be positive");
}

BoundedValue eval_cuspform(const QSeries& f, const UpperHalfPoint& tau) {
  const auto a = to_doubles(f);
  const std::complex<double> v = eval_qseries(a, a.size(), tau.tau());
  // Rounding of the Horner sum plus the unseen tail.
  double mag = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) mag += std::abs(a[n]) * std::exp(-kTwoPi * tau.y * static_cast<double>(n));
  const double bound = deligne_tail(a.size(), f.weight(), tau.y) + 4.0 * std::numeric_limits<double>::epsilon() * mag;
  return {v, bound, false};
}

CuspForm::CuspForm(std::vector<double> a, int k, std::int64_t level) : a_(std::move(a)), k_(k), level_(level) {
  if (a_.size() < 2) throw std::invalid_argument("CuspForm: need at least two coefficients");
  if (a_[0] != 0.0) throw std::invalid_argument("CuspForm: constant term must vanish");
  // Height at which the unseen tail drops below 2^-60 of the leading term size.
  const double n = static_cast<double>(a_.size());
  usable_height_ = (std::max(k_, 0) / 2.0 * std::log(n) + std::log(2.0) + 60.0 * std::log(2.0)) / (kTwoPi * (n - 1.0));
  if (level_ == 1) {
    sup_norm_ = envelope_sup(a_, k_, std::sqrt(3.0) / 2.0, 8.0, 1e-3);
  } else {
    const double lo = std::max(usable_height_, std::sqrt(3.0) / (2.0 * static_cast<double>(level_)));
    sup_norm_ = envelope_sup(a_, k_, lo, 8.0, 1e-3);
  }
}

CuspForm CuspForm::builtin(int k, std::size_t order) {
  const auto table = eigenform_coefficients_double(k, order);
  return CuspForm(std::vector<double>(table->begin(), table->begin() + static_cast<std::ptrdiff_t>(order)), k, 1);
}

CuspForm CuspForm::from_series(const QSeries& f) { return CuspForm(to_doubles(f), f.weight(), f.level()); }

std::complex<double> CuspForm::operator()(const std::complex<double>& tau) const {
  if (!(tau.imag() > 0.0)) throw std::domain_error("CuspForm: argument must lie in the upper half-plane");
  if (level_ != 1) return eval_qseries(a_, terms_for_height(tau.imag(), k_, a_.size()), tau);
  std::complex<double> w = tau;
  std::complex<double> factor = 1.0;
  for (int it = 0; it < 10000; ++it) {
    w -= std::floor(w.real() + 0.5);
    if (std::norm(w) >= 1.0) break;
    // f(w) = w^{-k} f(-1/w).
    factor *= std::pow(w, -k_);
    w = -1.0 / w;
  }
  return factor * eval_qseries(a_, std::min<std::size_t>(a_.size(), 32), w);
}

BoundedValue eval_E1(double s, int k, std::int64_t N, const UpperHalfPoint& tau, std::int64_t M) {
  if (k <= 4 || k % 2 != 0) throw std::invalid_argument("eval_E1: k must be even and > 4");
  const auto reps = coset_reps(N, M);
  const std::complex<double> t = tau.tau();
  CompensatedComplexSum<double> acc;
  const double e = s + 2.0 - k;
  for (const auto& g : reps) {
    const std::complex<double> j = double(g.c) * t + double(g.d);
    std::complex<double> term = std::pow(j, -k);
    if (e != 0.0) term *= std::pow(std::abs(j), -e);
    acc += term;
  }
  return {acc.value(), e1_tail_estimate(k, t, M), true};
}

BoundedValue eval_klingen_diag(KlingenCoefficients& coeffs, const UpperHalfPoint& tau1, const UpperHalfPoint& tau2,
                               std::int64_t cutoff) {
  if (cutoff < 0) throw std::invalid_argument("eval_klingen_diag: cutoff must be non-negative");
  const int k = coeffs.weight();
  const std::complex<double> t1 = tau1.tau(), t2 = tau2.tau();
  CompensatedComplexSum<double> acc;
  double tail = 0.0;
  double K = 0.0;
  for (std::int64_t n1 = 0; n1 <= cutoff; ++n1) {
    const std::complex<double> q1 = std::exp(std::complex<double>(0, kTwoPi * n1) * t1);
    for (std::int64_t n2 = 0; n2 <= cutoff; ++n2) {
      const std::complex<double> q12 = q1 * std::exp(std::complex<double>(0, kTwoPi * n2) * t2);
      CompensatedSum<double> c;
      for (const auto& T : lambda_set(n1, n2)) {
        const CoefficientValue A = coeffs(T);
        c += A.value;
        tail += std::abs(q12) * A.bound;
        if (n1 > 0 && n2 > 0)
          K = std::max(K, std::abs(A.value) / std::pow(4.0 * n1 * n2, k - 1.0));
      }
      acc += c.value() * q12;
    }
  }
  // Envelope for the omitted (n1, n2): |A(T)| <= 10 K (4 n1 n2)^{k-1} and
  // |a(n)| <= 2 n^{k/2} on the boundary rows.
  K *= 10.0;
  const double r1 = std::exp(-kTwoPi * tau1.y), r2 = std::exp(-kTwoPi * tau2.y);
  const std::int64_t big = 4 * cutoff + 64;
  double envelope = 0.0;
  for (std::int64_t n1 = 0; n1 <= big; ++n1)
    for (std::int64_t n2 = 0; n2 <= big; ++n2) {
      if (n1 <= cutoff && n2 <= cutoff) continue;
      const double w = std::pow(r1, double(n1)) * std::pow(r2, double(n2));
      if (w == 0.0) continue;
      if (n1 == 0 || n2 == 0) {
        envelope += 2.0 * std::pow(double(n1 + n2), k / 2.0) * w;
      } else {
        const double count = 2.0 * std::sqrt(4.0 * n1 * n2) + 1.0;
        envelope += count * K * std::pow(4.0 * n1 * n2, k - 1.0) * w;
      }
    }
  return {acc.value(), tail + envelope, true};
}

PullbackValue eval_pullback_rhs(const CuspForm& f, int k, std::int64_t N, const UpperHalfPoint& tau1,
                                const UpperHalfPoint& tau2, const TruncationParams& params,
                                const PullbackOptions& options) {
  const auto reps = coset_reps(N, params.coset_height);
  return pullback_core(f, k, reps, reps, reps, tau1, tau2, params, options, true);
}

PullbackValue eval_pullback_rhs_para(const CuspForm& f, int k, std::int64_t N, const UpperHalfPoint& tau1,
                                     const UpperHalfPoint& tau2, const TruncationParams& params,
                                     const PullbackOptions& options) {
  const auto full = coset_reps(1, params.coset_height);
  const auto level = coset_reps(N * N, params.coset_height);
  return pullback_core(f, k, full, level, level, tau1, tau2, params, options, true);
}

BoundedValue extract_Af(const CuspForm& f, int k, std::int64_t n1, std::int64_t n2, const TruncationParams& params,
                        double y1, double y2, const PullbackOptions& options) {
  const std::int64_t G = params.grid_size;
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("extract_Af: n1, n2 must be non-negative");
  if (G < 2 * std::max(n1, n2) + 2)
    throw std::invalid_argument("extract_Af: grid_size must be at least 2 max(n1, n2) + 2");
  const auto reps = coset_reps(1, params.coset_height);
  const auto points = static_cast<std::size_t>(G * G);
  std::vector<PullbackValue> values(points);
  PullbackOptions inner = options;
  inner.threads = 1;
  parallel_for(points, options.threads, [&](std::size_t idx) {
    const double x1 = static_cast<double>(idx / static_cast<std::size_t>(G)) / static_cast<double>(G);
    const double x2 = static_cast<double>(idx % static_cast<std::size_t>(G)) / static_cast<double>(G);
    values[idx] = pullback_core(f, k, reps, reps, reps, UpperHalfPoint(x1, y1), UpperHalfPoint(x2, y2), params,
                                inner, false);
  });
  CompensatedComplexSum<double> acc;
  double pointwise = 0.0, magnitude = 0.0;
  for (std::size_t idx = 0; idx < points; ++idx) {
    const double j = static_cast<double>(idx / static_cast<std::size_t>(G));
    const double l = static_cast<double>(idx % static_cast<std::size_t>(G));
    const double phase = -kTwoPi * (static_cast<double>(n1) * j + static_cast<double>(n2) * l) / static_cast<double>(G);
    acc += values[idx].tr_sum * std::complex<double>(std::cos(phase), std::sin(phase));
    pointwise = std::max(pointwise, values[idx].bound());
    magnitude = std::max(magnitude, std::abs(values[idx].tr_sum));
  }
  const double rescale = std::exp(kTwoPi * (static_cast<double>(n1) * y1 + static_cast<double>(n2) * y2));
  const std::complex<double> A = acc.value() / static_cast<double>(points) * rescale;
  // Aliasing: the nearest folded coefficients sit G steps away in either
  // index and grow at most like (n1 n2)^{k-1}.
  const double Gd = static_cast<double>(G);
  const double base = std::max(1.0, std::abs(A));
  const double m1 = std::max<std::int64_t>(n1, 1), m2 = std::max<std::int64_t>(n2, 1);
  const double grow = std::max(std::pow((m1 + Gd) / m1, k - 1.0), std::pow((m2 + Gd) / m2, k - 1.0));
  const double aliasing = base * grow * std::exp(-kTwoPi * Gd * std::min(y1, y2));
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
  return {A, aliasing + (pointwise + rounding) * rescale, true};
}

}  // namespace klingen
