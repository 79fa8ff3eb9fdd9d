#include "klingen/quadforms.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace klingen {

namespace {

std::int64_t isqrt64(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct Mat2i {
  std::int64_t a, b, c, d;
  Mat2i operator*(const Mat2i& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2Z to_integer() const { return mat2(Integer(a), Integer(b), Integer(c), Integer(d)); }
};

std::string describe(const HalfIntMatrix& T) {
  return "(" + std::to_string(T.n1) + ", " + std::to_string(T.b) + ", " + std::to_string(T.n2) + ")";
}

}  // namespace

std::int64_t HalfIntMatrix::content() const { return std::gcd(std::gcd(n1, b), n2); }

std::vector<HalfIntMatrix> lambda_set(std::int64_t n1, std::int64_t n2) {
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("lambda_set: n1, n2 must be non-negative");
  const std::int64_t bmax = isqrt64(4 * n1 * n2);
  std::vector<HalfIntMatrix> out;
  out.reserve(static_cast<std::size_t>(2 * bmax + 1));
  for (std::int64_t b = -bmax; b <= bmax; ++b) out.push_back({n1, b, n2});
  return out;
}

DiscriminantSplit disc_split(std::int64_t N) {
  if (N <= 0) throw std::invalid_argument("disc_split: det(2T) must be positive");
  const auto [s, r] = squarefree_split(N);
  if (s % 4 == 3) return {r, s};
  if (r % 2 != 0)
    throw std::invalid_argument("disc_split: -" + std::to_string(N) + " is not a discriminant");
  return {r / 2, 4 * s};
}

DiscriminantSplit disc_split(const HalfIntMatrix& T) {
  if (T.det2() <= 0) throw std::invalid_argument("disc_split: T " + describe(T) + " is not positive definite");
  return disc_split(T.det2());
}

SingularReduction reduce_singular_with_witness(const HalfIntMatrix& T) {
  if (T.det2() != 0) throw std::invalid_argument("reduce_singular: T " + describe(T) + " is nonsingular");
  if (!T.is_positive_semidefinite())
    throw std::invalid_argument("reduce_singular: T " + describe(T) + " is not semidefinite");
  if (T.is_zero()) return {0, Mat2Z::Identity()};
  if (T.n1 == 0) return {T.n2, mat2(0, 1, 1, 0)};
  // Primitive generator of the kernel of the Gram matrix 2T = [[2 n1, b], [b, 2 n2]].
  const std::int64_t g = std::gcd(T.b, 2 * T.n1);
  const std::int64_t xk = -T.b / g, yk = 2 * T.n1 / g;
  const auto [x1, y1] = complete_coprime_pair(Integer(xk), Integer(yk));
  Mat2Z U = mat2(x1, Integer(xk), y1, Integer(yk));
  const HalfIntMatrix R = unimodular_transform(T, U);
  return {R.n1, U};
}

std::int64_t reduce_singular(const HalfIntMatrix& T) { return reduce_singular_with_witness(T).content; }

HalfIntMatrix unimodular_transform(const HalfIntMatrix& T, const Mat2Z& U) {
  const Integer det = det2(U);
  if (det != 1 && det != -1) throw std::invalid_argument("unimodular_transform: det U must be +-1");
  Mat2Z gram;
  gram << Integer(2 * T.n1), Integer(T.b), Integer(T.b), Integer(2 * T.n2);
  const Mat2Z r = U.transpose() * gram * U;
  return {(r(0, 0) / 2).convert_to<std::int64_t>(), r(0, 1).convert_to<std::int64_t>(),
          (r(1, 1) / 2).convert_to<std::int64_t>()};
}

GaussReduction gauss_reduce(const HalfIntMatrix& T) {
  if (!T.is_positive_definite())
    throw std::invalid_argument("gauss_reduce: T " + describe(T) + " is not positive definite");
  HalfIntMatrix r = T;
  Mat2i u{1, 0, 0, 1};
  for (;;) {
    if (r.n1 > r.n2) {
      std::swap(r.n1, r.n2);
      u = u * Mat2i{0, 1, 1, 0};
      continue;
    }
    if (r.b > r.n1 || r.b < -r.n1) {
      // x -> x - q y brings b into (-n1, n1].
      const std::int64_t two_n1 = 2 * r.n1;
      std::int64_t q = (r.b + r.n1) / two_n1;
      if ((r.b + r.n1) % two_n1 != 0 && (r.b + r.n1) < 0) --q;
      const std::int64_t nb = r.b - two_n1 * q;
      r.n2 = r.n1 * q * q - r.b * q + r.n2;
      r.b = nb;
      u = u * Mat2i{1, -q, 0, 1};
      continue;
    }
    break;
  }
  if (r.b < 0) {
    r.b = -r.b;
    u = u * Mat2i{1, 0, 0, -1};
  }
  return {r, u.to_integer()};
}

std::vector<std::int64_t> theta_coeffs(const HalfIntMatrix& T, std::size_t order) {
  if (!T.is_positive_definite())
    throw std::invalid_argument("theta_coeffs: T " + describe(T) + " is not positive definite");
  std::vector<std::int64_t> count(order, 0);
  if (order == 0) return count;
  const auto nmax = static_cast<std::int64_t>(order - 1);
  const double D = static_cast<double>(T.det2());
  // min over m of T(m, l) is l^2 det(2T) / (4 n1).
  const auto lmax = static_cast<std::int64_t>(std::sqrt(4.0 * T.n1 * static_cast<double>(nmax) / D)) + 1;
  for (std::int64_t l = -lmax; l <= lmax; ++l) {
    const double rest = static_cast<double>(nmax) - static_cast<double>(l * l) * D / (4.0 * T.n1);
    if (rest < -1.0) continue;
    const double center = -static_cast<double>(T.b * l) / (2.0 * T.n1);
    const double radius = std::sqrt(std::max(rest, 0.0) / T.n1);
    const auto mlo = static_cast<std::int64_t>(std::floor(center - radius)) - 1;
    const auto mhi = static_cast<std::int64_t>(std::ceil(center + radius)) + 1;
    for (std::int64_t m = mlo; m <= mhi; ++m) {
      const std::int64_t v = T(m, l);
      if (v >= 0 && v <= nmax) ++count[static_cast<std::size_t>(v)];
    }
  }
  return count;
}

double theta_bound_constant(const HalfIntMatrix& T) {
  if (!T.is_positive_definite())
    throw std::invalid_argument("theta_bound_constant: T " + describe(T) + " is not positive definite");
  // Each admissible l contributes at most two m, and there are at most
  // 2 sqrt(4 n1 n / det) + 1 such l; the same holds with the roles swapped.
  const double nmin = static_cast<double>(std::min(T.n1, T.n2));
  return 8.0 * std::sqrt(nmin / static_cast<double>(T.det2()));
}

}  // namespace klingen
