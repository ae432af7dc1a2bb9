#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace stacky {

// Smallest-prime-factor sieve. Immutable after construction, so instances can
// be shared freely between census workers.
class SpfSieve {
 public:
  explicit SpfSieve(uint32_t limit);

  uint32_t limit() const { return limit_; }
  uint32_t spf(uint64_t n) const { return spf_[n]; }
  const std::vector<uint32_t>& primes() const { return primes_; }

  // n must be <= limit(). Appends (prime, exponent) pairs in ascending order.
  void factor(uint64_t n, std::vector<std::pair<uint64_t, int>>& out) const;

  uint64_t squarefree_part(uint64_t n) const;  // n <= limit()

 private:
  uint32_t limit_;
  std::vector<uint32_t> spf_;
  std::vector<uint32_t> primes_;
};

// Process-wide sieve used by the arithmetic kernels (built once, then
// read-only).
const SpfSieve& small_sieve();

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(uint64_t n);

// Brent's variant of Pollard rho; n must be composite and > 1.
uint64_t pollard_brent(uint64_t n);

// Full factorization of n >= 1, ascending primes.
std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n);

uint64_t isqrt_u64(uint64_t n);
bool is_square_u64(uint64_t n, uint64_t* root = nullptr);

// rad(n) for every n <= limit; rad(0) stored as 0, rad(1) = 1.
std::vector<uint32_t> radical_table(uint32_t limit);

// squarefree part of every n <= limit.
std::vector<uint64_t> squarefree_part_table(uint64_t limit);

}  // namespace stacky
