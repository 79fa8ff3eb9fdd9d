#pragma once

// Exact symplectic and unimodular matrices: the degree-two groups, the coset
// representatives behind the pullback sums, and the weight-k automorphy
// factor on the upper half-plane.

#include "klingen/matrix_types.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace klingen {

/// J = [[0, I], [-I, 0]].
Mat4Z symplectic_form();

/// A 4x4 integer matrix g with g^t J g = similitude * J.
struct SpRep {
  Mat4Z matrix;
  Integer similitude;
};

/// Wraps g after computing its similitude. Throws std::invalid_argument if
/// g^t J g is not a multiple of J.
SpRep make_sprep(const Mat4Z& g);

/// Nonzero mu with g^t J g = mu J, or 0 if there is none.
Rational similitude_of(const Mat4Q& g);

enum class SiegelGroup { Sp4Z, Gamma0_4, ParamodularK };

/// Exact membership: Sp(4,Z); Sp(4,Z) with lower-left block = 0 mod N; or the
/// paramodular group of level N, i.e. Sp(4,Q) matrices with entry pattern
///   [ Z   NZ  Z   Z      ]
///   [ Z   Z   Z   N^-1 Z ]
///   [ Z   NZ  Z   Z      ]
///   [ NZ  NZ  NZ  Z      ].
bool is_member(const Mat4Q& g, SiegelGroup group, std::int64_t N = 1);
bool is_member(const Mat4Z& g, SiegelGroup group, std::int64_t N = 1);

/// Membership in Gamma_0(N) inside SL(2,Z).
bool is_member_gamma0(const Mat2Z& g, std::int64_t N);

Mat4Q to_rational(const Mat4Z& g);

/// L_N: identity plus N in position (1,2) and -N in position (4,3).
SpRep L_matrix(std::int64_t N);

struct DoubleCosetReps {
  SpRep identity;
  SpRep s1;
  SpRep r;
};

/// Representatives {1, s1, r} of the Klingen-parabolic / H_{1,1} double cosets.
DoubleCosetReps double_coset_reps();

/// diag(A, D) with A = [[d, -c], [-b, a]], D = [[a, b], [c, d]] and
/// (a, b) = complete_coprime_pair(c, d). Throws if gcd(c, d) != 1.
SpRep epsilon_cd(const Integer& c, const Integer& d);

/// The block embedding of (g1, g2) with det g1 = det g2:
///   [ a1  0  -b1  0 ]
///   [ 0   a2  0   b2]
///   [-c1  0   d1  0 ]
///   [ 0   c2  0   d2].
/// Throws std::invalid_argument on a determinant mismatch.
SpRep embed_h11(const Mat2Z& g1, const Mat2Z& g2);

/// A representative of Gamma_infty \ Gamma_0(N) indexed by its bottom row.
struct CosetRep {
  Mat2Z matrix;
  std::int64_t a, b, c, d;  // the same entries, machine-sized
};

/// One representative per bottom row (c, d) modulo sign: gcd(c, d) = 1,
/// N | c, 0 <= c <= M, |d| <= M, normalized with c > 0 or (c, d) = (0, 1).
/// Ordered by c, then d. Top rows come from complete_coprime_pair.
std::vector<CosetRep> coset_reps(std::int64_t N, std::int64_t M);

template <typename Real>
struct MoebiusImage {
  std::complex<Real> image;  // (a tau + b) / (c tau + d)
  std::complex<Real> j;      // c tau + d
};

/// gamma<tau> and the automorphy factor j(gamma, tau) = c tau + d for
/// ad - bc = 1. The imaginary part is formed as Im tau / |j|^2 directly.
template <typename Real>
MoebiusImage<Real> moebius(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                           const std::complex<Real>& tau) {
  const std::complex<Real> j = Real(c) * tau + Real(d);
  const Real n = std::norm(j);
  const Real re = ((Real(a) * tau + Real(b)) * std::conj(j)).real() / n;
  return {{re, tau.imag() / n}, j};
}

template <typename Real>
MoebiusImage<Real> moebius(const Mat2Z& g, const std::complex<Real>& tau) {
  return moebius<Real>(g(0, 0).convert_to<std::int64_t>(), g(0, 1).convert_to<std::int64_t>(),
                       g(1, 0).convert_to<std::int64_t>(), g(1, 1).convert_to<std::int64_t>(), tau);
}

}  // namespace klingen
