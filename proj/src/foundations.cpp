#include "klingen/foundations.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

namespace klingen {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// (-1)^{(a^2-1)/8} for odd a.
int kronecker_two(std::int64_t a) {
  const std::int64_t r = mod_pos(a, 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

Integer gcd_int(Integer a, Integer b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of x modulo m (m >= 2, gcd(x,m) = 1), in [0, m).
Integer mod_inverse(const Integer& x, const Integer& m) {
  Integer r0 = m, r1 = x % m;
  if (r1 < 0) r1 += m;
  Integer s0 = 0, s1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  Integer inv = s0 % m;
  if (inv < 0) inv += m;
  return inv;
}

}  // namespace

Rational bernoulli(unsigned n) {
  static std::mutex mutex;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mutex);
  while (table.size() <= n) {
    const unsigned m = static_cast<unsigned>(table.size());
    Rational acc = 0;
    for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * table[j];
    table.push_back(-acc / Rational(m + 1));
  }
  return table[n];
}

Rational bernoulli_polynomial(unsigned n, const Rational& x) {
  Rational acc = 0;
  Rational xpow = 1;  // x^{n-j}, accumulated from j = n downwards
  for (int j = static_cast<int>(n); j >= 0; --j) {
    acc += Rational(binomial(n, static_cast<unsigned>(j))) * bernoulli(static_cast<unsigned>(j)) * xpow;
    xpow *= x;
  }
  return acc;
}

Rational zeta_neg_odd(int k) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("zeta_neg_odd: k must be even and >= 2, got " + std::to_string(k));
  return -bernoulli(static_cast<unsigned>(k)) / Rational(k);
}

Integer divisor_sum(unsigned k, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("divisor_sum: n must be positive");
  Integer acc = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    acc += ipow(Integer(d), k);
    const std::int64_t e = n / d;
    if (e != d) acc += ipow(Integer(e), k);
  }
  return acc;
}

std::int64_t divisor_count(std::int64_t n) {
  std::int64_t count = 1;
  for (const auto& [p, e] : factorize(n)) count *= (e + 1);
  return count;
}

int kronecker(std::int64_t a, std::int64_t b) {
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && b % 2 == 0) return 0;
  int v = 0;
  while (b % 2 == 0) {
    b /= 2;
    ++v;
  }
  int k = (v % 2 == 0) ? 1 : kronecker_two(a);
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  // b is odd and positive from here on.
  for (;;) {
    if (a == 0) return b > 1 ? 0 : k;
    v = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++v;
    }
    if (v % 2 == 1) k *= kronecker_two(b);
    if (mod_pos(a, 4) == 3 && mod_pos(b, 4) == 3) k = -k;
    const std::int64_t r = a < 0 ? -a : a;
    a = mod_pos(b, r);
    b = r;
  }
}

bool is_discriminant(std::int64_t D) {
  const std::int64_t r = mod_pos(D, 4);
  if (r != 0 && r != 1) return false;
  if (D >= 0) {
    const auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(D))));
    for (std::int64_t t = s - 1; t <= s + 1; ++t)
      if (t >= 0 && t * t == D) return false;
  }
  return true;
}

bool is_fundamental_discriminant(std::int64_t D) {
  if (D == 0 || D == 1) return false;
  const std::int64_t r = mod_pos(D, 4);
  auto squarefree = [](std::int64_t m) {
    if (m < 0) m = -m;
    for (const auto& [p, e] : factorize(m))
      if (e > 1) return false;
    return true;
  };
  if (r == 1) return squarefree(D);
  if (r == 0) {
    const std::int64_t m = D / 4;
    const std::int64_t mr = mod_pos(m, 4);
    return (mr == 2 || mr == 3) && squarefree(m);
  }
  return false;
}

DirichletKronecker::DirichletKronecker(std::int64_t discriminant) : disc_(discriminant) {
  if (!is_discriminant(discriminant) && discriminant != 1)
    throw std::invalid_argument("DirichletKronecker: not a discriminant: " + std::to_string(discriminant));
}

Rational generalized_bernoulli(const DirichletKronecker& chi, unsigned n) {
  if (n < 1) throw std::invalid_argument("generalized_bernoulli: n must be positive");
  const std::int64_t f = chi.modulus();
  Rational acc = 0;
  for (std::int64_t a = 1; a <= f; ++a) {
    const int c = chi(a);
    if (c == 0) continue;
    acc += Rational(c) * bernoulli_polynomial(n, Rational(Integer(a), Integer(f)));
  }
  return acc * Rational(ipow(Integer(f), n - 1));
}

CoprimeCompletion complete_coprime_pair(const Integer& c, const Integer& d) {
  if (gcd_int(c, d) != 1)
    throw std::invalid_argument("complete_coprime_pair: (c, d) not coprime");
  if (c == 0) return {d, Integer(0)};
  const Integer m = c < 0 ? Integer(-c) : c;
  const Integer a = (m == 1) ? Integer(0) : mod_inverse(d, m);
  // a*d = 1 (mod c), so c divides a*d - 1 exactly.
  const Integer b = (a * d - 1) / c;
  return {a, b};
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

SquarefreeSplit squarefree_split(std::int64_t n) {
  SquarefreeSplit out{1, 1};
  for (const auto& [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) out.square_root *= p;
    if (e % 2 == 1) out.squarefree *= p;
  }
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t p = 3; p * p <= n; p += 2)
    if (n % p == 0) return false;
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t p = 2; p <= n; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    out.push_back(p);
    for (std::int64_t m = p * p; m <= n; m += p) composite[static_cast<std::size_t>(m)] = true;
  }
  return out;
}

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Integer ipow(const Integer& base, unsigned e) {
  Integer result = 1, b = base;
  while (e > 0) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

Rational rpow(const Rational& base, int e) {
  if (e >= 0) {
    return Rational(ipow(numerator(base), static_cast<unsigned>(e)),
                    ipow(denominator(base), static_cast<unsigned>(e)));
  }
  if (base == 0) throw std::domain_error("rpow: zero to a negative power");
  return Rational(1) / rpow(base, -e);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }
double to_double(const Integer& z) { return z.convert_to<double>(); }

}  // namespace klingen
