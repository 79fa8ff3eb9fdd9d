#pragma once

// Exact integer/rational arithmetic and elementary number theory.
//
// Everything here is exact; no floating point is involved. Integer and
// Rational are GMP-backed Boost.Multiprecision numbers with expression
// templates disabled so they interoperate cleanly with Eigen.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace klingen {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Bernoulli number B_n with the convention B_1 = -1/2.
Rational bernoulli(unsigned n);

/// Bernoulli polynomial B_n(x) = sum_j C(n,j) B_j x^{n-j}.
Rational bernoulli_polynomial(unsigned n, const Rational& x);

/// zeta(1-k) = -B_k / k for even k >= 2. Throws std::invalid_argument otherwise.
Rational zeta_neg_odd(int k);

/// sigma_k(n) = sum of d^k over positive divisors d of n (n >= 1).
Integer divisor_sum(unsigned k, std::int64_t n);

/// Number of positive divisors of n.
std::int64_t divisor_count(std::int64_t n);

/// Kronecker symbol (D/n). Defined for all integers D, n.
int kronecker(std::int64_t D, std::int64_t n);

/// True iff D is a fundamental discriminant (D = 1 excluded).
bool is_fundamental_discriminant(std::int64_t D);

/// True iff D = 0 or 1 mod 4 and D is not a square (a discriminant of some
/// quadratic order).
bool is_discriminant(std::int64_t D);

/// Quadratic character n -> (D/n) attached to a discriminant D.
class DirichletKronecker {
public:
  explicit DirichletKronecker(std::int64_t discriminant);

  std::int64_t discriminant() const { return disc_; }
  std::int64_t modulus() const { return disc_ < 0 ? -disc_ : disc_; }
  int operator()(std::int64_t n) const { return kronecker(disc_, n); }
  /// chi(-1), i.e. +1 for real quadratic fields and -1 for imaginary ones.
  int parity() const { return disc_ < 0 ? -1 : 1; }

private:
  std::int64_t disc_;
};

/// Generalized Bernoulli number B_{n,chi} = f^{n-1} sum_{a=1}^{f} chi(a) B_n(a/f).
Rational generalized_bernoulli(const DirichletKronecker& chi, unsigned n);

struct CoprimeCompletion {
  Integer a;
  Integer b;
};

/// Returns (a, b) with a*d - b*c = 1 for coprime (c, d).
///
/// Normalization: for c != 0 the unique solution with 0 <= a < |c|; for
/// c = 0 (so d = +-1) the pair (d, 0). Throws std::invalid_argument if
/// gcd(c, d) != 1.
CoprimeCompletion complete_coprime_pair(const Integer& c, const Integer& d);

/// Prime factorization by trial division, ascending primes. n >= 1.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// n = squarefree * square^2 with squarefree squarefree (n >= 1).
struct SquarefreeSplit {
  std::int64_t squarefree;
  std::int64_t square_root;
};
SquarefreeSplit squarefree_split(std::int64_t n);

bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t n);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// Integer power with an integer base.
Integer ipow(const Integer& base, unsigned e);
/// Rational power, exponent may be negative.
Rational rpow(const Rational& base, int e);

double to_double(const Rational& r);
double to_double(const Integer& z);

}  // namespace klingen
