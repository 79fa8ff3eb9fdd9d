#pragma once

// Binary quadratic forms n1 x^2 + b x y + n2 y^2, viewed as half-integral
// symmetric matrices T = [[n1, b/2], [b/2, n2]].

#include "klingen/matrix_types.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace klingen {

struct HalfIntMatrix {
  std::int64_t n1 = 0;
  std::int64_t b = 0;
  std::int64_t n2 = 0;

  /// det(2T) = 4 n1 n2 - b^2.
  std::int64_t det2() const { return 4 * n1 * n2 - b * b; }
  bool is_zero() const { return n1 == 0 && b == 0 && n2 == 0; }
  bool is_positive_definite() const { return n1 > 0 && det2() > 0; }
  bool is_positive_semidefinite() const { return n1 >= 0 && n2 >= 0 && det2() >= 0; }
  /// gcd(n1, b, n2), zero for T = 0.
  std::int64_t content() const;

  /// Value of the form at (x, y).
  std::int64_t operator()(std::int64_t x, std::int64_t y) const { return n1 * x * x + b * x * y + n2 * y * y; }

  friend bool operator==(const HalfIntMatrix&, const HalfIntMatrix&) = default;
  friend auto operator<=>(const HalfIntMatrix&, const HalfIntMatrix&) = default;
};

struct DiscriminantSplit {
  std::int64_t f_T;      // conductor, f_T^2 Delta_T = det(2T)
  std::int64_t Delta_T;  // -Delta_T is a fundamental discriminant
};

/// All T = (n1, b, n2) with b^2 <= 4 n1 n2, b ascending.
std::vector<HalfIntMatrix> lambda_set(std::int64_t n1, std::int64_t n2);

/// Splits det(2T) = f_T^2 Delta_T with -Delta_T fundamental.
/// Throws std::invalid_argument when det(2T) <= 0.
DiscriminantSplit disc_split(const HalfIntMatrix& T);

/// Same split for a bare positive integer N = det(2T).
DiscriminantSplit disc_split(std::int64_t det2T);

struct SingularReduction {
  std::int64_t content;  // m with U^t T U = diag(m, 0)
  Mat2Z U;               // unimodular witness
};

/// Content m of a singular positive semidefinite T, so that T is
/// unimodularly equivalent to diag(m, 0). m = 0 iff T = 0.
/// Throws std::invalid_argument when det(2T) != 0 or T is not semidefinite.
std::int64_t reduce_singular(const HalfIntMatrix& T);

/// reduce_singular together with a matrix U realizing the equivalence.
SingularReduction reduce_singular_with_witness(const HalfIntMatrix& T);

/// U^t T U. Throws std::invalid_argument unless det U = +-1.
HalfIntMatrix unimodular_transform(const HalfIntMatrix& T, const Mat2Z& U);

struct GaussReduction {
  HalfIntMatrix reduced;  // 0 <= b <= n1 <= n2
  Mat2Z U;                // U^t T U = reduced, det U = +-1
};

/// GL(2,Z)-reduced representative of a positive definite T.
GaussReduction gauss_reduce(const HalfIntMatrix& T);

/// Representation numbers b_T(n), 0 <= n < order, by lattice enumeration.
/// Throws std::invalid_argument unless T is positive definite.
std::vector<std::int64_t> theta_coeffs(const HalfIntMatrix& T, std::size_t order);

/// C_T with b_T(n) <= C_T sqrt(n) + 2 for all n >= 1.
double theta_bound_constant(const HalfIntMatrix& T);

}  // namespace klingen
