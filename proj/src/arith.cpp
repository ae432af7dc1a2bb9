#include "stacky/arith.hpp"

#include <cassert>
#include <cstdlib>
#include <stdexcept>

#include "stacky/primes.hpp"

namespace stacky {

mpz_class Factorization::reconstruct() const {
  mpz_class v = sign;
  mpz_class pw;
  for (auto [p, e] : factors) {
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    v *= pw;
  }
  return v;
}

mpz_class PowerFreeDecomposition::reconstruct() const {
  mpz_class v = 1;
  mpz_class pw;
  for (size_t j = 1; j <= parts.size(); ++j) {
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(parts[j - 1]), static_cast<unsigned long>(j));
    v *= pw;
  }
  return v;
}

Factorization factor(long long n) {
  if (n == 0) throw std::domain_error("factor: 0 has no prime factorization");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  f.factors = factor_u64(static_cast<uint64_t>(n < 0 ? -(unsigned long long)n : (unsigned long long)n));
  return f;
}

mpz_class phi_m(uint64_t n, int m) {
  if (n < 1 || m < 2) throw std::domain_error("phi_m: need n >= 1, m >= 2");
  mpz_class v = 1, pw;
  for (auto [p, e] : factor_u64(n)) {
    int r = e % m;
    if (r != 0) {
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m - r));
      v *= pw;
    }
  }
  return v;
}

uint64_t r_m(uint64_t n, int m) {
  if (n < 1 || m < 2) throw std::domain_error("r_m: need n >= 1, m >= 2");
  uint64_t v = 1;
  for (auto [p, e] : factor_u64(n)) {
    for (int i = 0; i < e % m; ++i) v *= p;
  }
  return v;
}

uint64_t rad_m(uint64_t n, int m) {
  if (n < 1 || m < 2) throw std::domain_error("rad_m: need n >= 1, m >= 2");
  uint64_t v = 1;
  for (auto [p, e] : factor_u64(n)) {
    if (e % m != 0) v *= p;
  }
  return v;
}

uint64_t radical(long long n) {
  if (n == 0) throw std::domain_error("radical: n must be nonzero");
  uint64_t v = 1;
  for (auto [p, e] : factor_u64(n < 0 ? -(unsigned long long)n : (unsigned long long)n)) v *= p;
  return v;
}

uint64_t sqf(long long n) {
  if (n == 0) throw std::domain_error("sqf: n must be nonzero");
  return r_m(n < 0 ? -(unsigned long long)n : (unsigned long long)n, 2);
}

PowerFreeDecomposition power_free_decompose(long long n, int m) {
  if (n == 0) throw std::domain_error("power_free_decompose: n must be nonzero");
  if (m < 2) throw std::domain_error("power_free_decompose: need m >= 2");
  PowerFreeDecomposition d;
  d.m = m;
  d.parts.assign(m, 1);
  for (auto [p, e] : factor_u64(n < 0 ? -(unsigned long long)n : (unsigned long long)n)) {
    int r = e % m;
    if (r != 0) d.parts[r - 1] *= p;
    for (int i = 0; i < e / m; ++i) d.parts[m - 1] *= p;
  }
  return d;
}

int n_size(int m, long long d, long long r) {
  if (m < 1) throw std::domain_error("n_size: need m >= 1");
  long long v = -(r % m) * (d % m) % m;
  return static_cast<int>((v % m + m) % m);
}

int jacobi(long long a, uint64_t n) {
  if (n == 0 || (n & 1) == 0) throw std::domain_error("jacobi: n must be odd and positive");
  uint64_t ua = static_cast<uint64_t>(((a % static_cast<long long>(n)) + static_cast<long long>(n)) % static_cast<long long>(n));
  uint64_t b = n;
  int t = 1;
  while (ua != 0) {
    while ((ua & 1) == 0) {
      ua >>= 1;
      uint64_t r = b & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(ua, b);
    if ((ua & 3) == 3 && (b & 3) == 3) t = -t;
    ua %= b;
  }
  return b == 1 ? t : 0;
}

mpz_class stacky_local_factor(uint64_t lambda, long long exponent, int m,
                              long long power, SizeKind kind) {
  assert(lambda >= 1 && m >= 2 && power >= 0);
  mpz_class v = 1, pw;
  for (auto [p, e] : factor_u64(lambda)) {
    long long r = (static_cast<long long>(e % m) * (exponent % m)) % m;
    r = (r % m + m) % m;
    long long local = 0;
    switch (kind) {
      case SizeKind::kPhi:
        local = r == 0 ? 0 : (m - r);
        break;
      case SizeKind::kRm:
        local = r;
        break;
      case SizeKind::kRadm:
        local = r == 0 ? 0 : 1;
        break;
    }
    if (local * power > 0) {
      mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(local * power));
      v *= pw;
    }
  }
  return v;
}

}  // namespace stacky
