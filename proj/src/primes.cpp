#include "stacky/primes.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stacky {

SpfSieve::SpfSieve(uint32_t limit) : limit_(limit), spf_(limit + 1, 0) {
  if (limit_ >= 1) spf_[1] = 1;
  for (uint32_t i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back(i);
    }
    for (uint32_t p : primes_) {
      if (p > spf_[i]) break;
      uint64_t next = uint64_t(p) * i;
      if (next > limit_) break;
      spf_[next] = p;
    }
  }
}

void SpfSieve::factor(uint64_t n, std::vector<std::pair<uint64_t, int>>& out) const {
  assert(n >= 1 && n <= limit_);
  while (n > 1) {
    uint64_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
}

uint64_t SpfSieve::squarefree_part(uint64_t n) const {
  assert(n >= 1 && n <= limit_);
  uint64_t res = 1;
  while (n > 1) {
    uint64_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e & 1) res *= p;
  }
  return res;
}

const SpfSieve& small_sieve() {
  static const SpfSieve sieve(1'000'000);
  return sieve;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = m == 1 ? 0 : 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic base set for all 64-bit integers.
  for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    uint64_t x = powmod_u64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

uint64_t pollard_brent(uint64_t n) {
  assert(n > 1 && !is_prime_u64(n));
  if ((n & 1) == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1, q = 1, ys = 0;
    uint64_t r = 1;
    const uint64_t m = 128;
    auto step = [&](uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
    while (d == 1) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = step(y);
      for (uint64_t k = 0; k < r && d == 1; k += m) {
        ys = y;
        uint64_t lim = std::min(m, r - k);
        for (uint64_t i = 0; i < lim; ++i) {
          y = step(y);
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (d == n) {
      d = 1;
      while (d == 1) {
        ys = step(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (d != n) return d;
  }
}

namespace {

void factor_rec(uint64_t n, std::vector<std::pair<uint64_t, int>>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.emplace_back(n, 1);
    return;
  }
  uint64_t d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<uint64_t, int>> factor_u64(uint64_t n) {
  if (n == 0) throw std::domain_error("factor_u64: n must be nonzero");
  std::vector<std::pair<uint64_t, int>> out;
  const SpfSieve& sieve = small_sieve();
  if (n <= sieve.limit()) {
    sieve.factor(n, out);
    return out;
  }
  for (uint32_t p : sieve.primes()) {
    if (p > 10'000 || uint64_t(p) * p > n) break;
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  std::vector<std::pair<uint64_t, int>> tail;
  factor_rec(n, tail);
  std::sort(tail.begin(), tail.end());
  for (size_t i = 0; i < tail.size();) {
    size_t j = i;
    int e = 0;
    while (j < tail.size() && tail[j].first == tail[i].first) e += tail[j++].second;
    out.emplace_back(tail[i].first, e);
    i = j;
  }
  return out;
}

uint64_t isqrt_u64(uint64_t n) {
  if (n == 0) return 0;
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n && (r + 1) != 0) ++r;
  return r;
}

bool is_square_u64(uint64_t n, uint64_t* root) {
  uint64_t r = isqrt_u64(n);
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

std::vector<uint32_t> radical_table(uint32_t limit) {
  // Linear sieve carrying the least prime factor alongside the radical.
  std::vector<uint32_t> rad(uint64_t(limit) + 1, 0), lpf(uint64_t(limit) + 1, 0);
  std::vector<uint32_t> primes;
  if (limit >= 1) rad[1] = 1;
  for (uint32_t i = 2; i <= limit; ++i) {
    if (lpf[i] == 0) {
      lpf[i] = i;
      rad[i] = i;
      primes.push_back(i);
    }
    for (uint32_t p : primes) {
      if (p > lpf[i]) break;
      uint64_t next = uint64_t(p) * i;
      if (next > limit) break;
      lpf[next] = p;
      rad[next] = (i % p == 0) ? rad[i] : rad[i] * p;
    }
  }
  return rad;
}

std::vector<uint64_t> squarefree_part_table(uint64_t limit) {
  SpfSieve sieve(static_cast<uint32_t>(limit));
  std::vector<uint64_t> t(limit + 1, 0);
  if (limit >= 1) t[1] = 1;
  for (uint64_t n = 2; n <= limit; ++n) t[n] = sieve.squarefree_part(n);
  return t;
}

}  // namespace stacky
