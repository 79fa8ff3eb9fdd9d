#include "modular_ntt.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace klingen::detail {

namespace {

constexpr int kMinTwoAdicity = 24;

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t find_generator(std::uint64_t p) {
  std::vector<std::uint64_t> factors;
  std::uint64_t m = p - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    factors.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (std::uint64_t q : factors)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

void transform(std::vector<std::uint64_t>& a, bool inverse, const NttPrime& prime) {
  const std::uint64_t p = prime.p;
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pow_mod(prime.root, (p - 1) / len, p);
    if (inverse) w = pow_mod(w, p - 2, p);
    const std::size_t half = len / 2;
    std::vector<std::uint64_t> powers(half);
    powers[0] = 1;
    for (std::size_t i = 1; i < half; ++i) powers[i] = mul_mod(powers[i - 1], w, p);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint64_t u = a[i + j];
        const std::uint64_t v = mul_mod(a[i + j + half], powers[j], p);
        a[i + j] = u + v >= p ? u + v - p : u + v;
        a[i + j + half] = u >= v ? u - v : u + p - v;
      }
    }
  }
  if (inverse) {
    const std::uint64_t inv_n = pow_mod(n % p, p - 2, p);
    for (auto& x : a) x = mul_mod(x, inv_n, p);
  }
}

}  // namespace

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1u) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

const std::vector<NttPrime>& ntt_primes(std::size_t count) {
  static std::mutex mutex;
  static std::vector<NttPrime> primes;
  static std::uint64_t next_c = ((std::uint64_t{1} << 31) - 1) >> kMinTwoAdicity;
  std::lock_guard<std::mutex> lock(mutex);
  while (primes.size() < count) {
    if (next_c == 0) throw std::runtime_error("ntt_primes: exhausted prime search");
    const std::uint64_t p = (next_c << kMinTwoAdicity) + 1;
    --next_c;
    if (!is_prime_u64(p)) continue;
    int m = 0;
    while (((p - 1) >> m) % 2 == 0) ++m;
    primes.push_back({p, find_generator(p), m});
  }
  return primes;
}

std::vector<std::uint64_t> multiply_truncated(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b,
                                              std::size_t order, const NttPrime& prime) {
  const std::size_t la = std::min(a.size(), order), lb = std::min(b.size(), order);
  if (la == 0 || lb == 0) return std::vector<std::uint64_t>(order, 0);
  std::size_t n = 1;
  while (n < la + lb - 1) n <<= 1;
  if (n > (std::size_t{1} << prime.two_adicity))
    throw std::length_error("multiply_truncated: transform length exceeds prime capacity");
  std::vector<std::uint64_t> fa(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(la));
  std::vector<std::uint64_t> fb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(lb));
  fa.resize(n, 0);
  fb.resize(n, 0);
  transform(fa, false, prime);
  transform(fb, false, prime);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mul_mod(fa[i], fb[i], prime.p);
  transform(fa, true, prime);
  fa.resize(order, 0);
  return fa;
}

}  // namespace klingen::detail
