#pragma once

// Number-theoretic transforms over word-sized primes p = c * 2^m + 1.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace klingen::detail {

struct NttPrime {
  std::uint64_t p;
  std::uint64_t root;  // generator of (Z/p)^*
  int two_adicity;     // largest m with 2^m | p - 1
};

/// Primes below 2^31 with 2^24 | p - 1, largest first, found on first use.
const std::vector<NttPrime>& ntt_primes(std::size_t count);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);

/// (a * b) mod (x^order, p), entries reduced into [0, p).
std::vector<std::uint64_t> multiply_truncated(const std::vector<std::uint64_t>& a,
                                              const std::vector<std::uint64_t>& b,
                                              std::size_t order, const NttPrime& prime);

}  // namespace klingen::detail
