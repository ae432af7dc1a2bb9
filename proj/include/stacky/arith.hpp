#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace stacky {

// Exact prime factorization of a nonzero integer: sign * prod p^e.
struct Factorization {
  int sign = 1;
  std::vector<std::pair<uint64_t, int>> factors;  // ascending primes, e >= 1

  mpz_class reconstruct() const;
};

Factorization factor(long long n);  // throws std::domain_error on n = 0

// phi_m(n): least k >= 1 with n*k a perfect m-th power.
// Equals prod_{ord_p(n) != 0 mod m} p^{m - (ord_p(n) mod m)}.
mpz_class phi_m(uint64_t n, int m);

// r_m(n) = prod p^{ord_p(n) mod m}, the m-power-free part.
uint64_t r_m(uint64_t n, int m);

// rad_m(n) = prod of primes p with ord_p(n) != 0 mod m.
uint64_t rad_m(uint64_t n, int m);

uint64_t radical(long long n);  // product of distinct primes of |n|
uint64_t sqf(long long n);      // square-free part, = r_2(|n|)

// |n| = prod_{j=1}^{m} parts[j-1]^j with parts[0..m-2] square-free and
// pairwise coprime. The sign of n is the caller's business.
struct PowerFreeDecomposition {
  int m = 2;
  std::vector<uint64_t> parts;  // parts[j-1] = z_j

  mpz_class reconstruct() const;
};

PowerFreeDecomposition power_free_decompose(long long n, int m);

// Size function N_{m,d}([r]) = (-r*d) mod m.
int n_size(int m, long long d, long long r);

// Jacobi symbol (a/n) for odd positive n.
int jacobi(long long a, uint64_t n);

// Kernels working on a value's exponent vector, so x^e never materializes.
enum class SizeKind { kPhi, kRm, kRadm };

// f_m(lambda^exponent)^power where f is phi_m, r_m or rad_m.
mpz_class stacky_local_factor(uint64_t lambda, long long exponent, int m,
                              long long power, SizeKind kind);

}  // namespace stacky
