#pragma once

// Brute-force reference evaluators used by the unit and acceptance suites.
// These recompute everything from scratch (per-value trial division, plain
// double loops) and stay independent of the library's sieve-based paths.

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "stacky/curve.hpp"
#include "stacky/primes.hpp"

namespace oracles {

inline uint64_t sqf_by_division(uint64_t n) {
  uint64_t out = 1;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e & 1) out *= p;
  }
  return out * n;  // leftover prime appears once
}

// counts[t] = #points with H_m <= t for the (0,2),(inf,2),(-1,m) curve.
inline std::vector<uint64_t> nm_oracle_ladder(uint64_t Tmax, int m) {
  std::vector<uint64_t> hist(Tmax + 1, 0);
  long long B = static_cast<long long>(Tmax);
  const unsigned __int128 cap = static_cast<unsigned __int128>(Tmax) * Tmax;
  for (long long y = 1; y <= B; ++y) {
    for (long long x = -B; x <= B; ++x) {
      if (x == 0 || x == -y) continue;
      if (std::gcd(x < 0 ? -x : x, y) != 1) continue;
      uint64_t x1 = sqf_by_division(x < 0 ? -x : x);
      uint64_t y1 = sqf_by_division(y);
      uint64_t mx = static_cast<uint64_t>(std::max<long long>(x < 0 ? -x : x, y));
      unsigned __int128 h2 = static_cast<unsigned __int128>(mx) * mx;
      bool over = false;
      for (int i = 0; i < m && !over; ++i) {
        h2 *= static_cast<unsigned __int128>(x1) * y1;
        over = h2 > cap;
      }
      if (over) continue;
      uint64_t s = static_cast<uint64_t>(x + y < 0 ? -(x + y) : x + y);
      for (uint64_t p = 2; p * p <= s && h2 <= cap; ++p) {
        if (s % p) continue;
        int e = 0;
        while (s % p == 0) {
          s /= p;
          ++e;
        }
        int r = e % m;
        for (int i = 0; i < 2 * (m - r) && r != 0; ++i) h2 *= p;
      }
      if (h2 <= cap && s > 1) {
        for (int i = 0; i < 2 * (m - 1) && h2 <= cap; ++i) h2 *= s;
      }
      if (h2 > cap) continue;
      uint64_t h = stacky::isqrt_u64(static_cast<uint64_t>(h2));
      if (static_cast<unsigned __int128>(h) * h < h2) ++h;
      if (h <= Tmax) ++hist[h];
    }
  }
  for (uint64_t t = 1; t <= Tmax; ++t) hist[t] += hist[t - 1];
  return hist;
}

// Canonical integral points of the standard (2,2,2) curve via the primitive
// Pythagorean parametrization, as (point, max) pairs.
inline std::set<std::pair<std::pair<long long, long long>, uint64_t>> pythagorean_points(uint64_t T) {
  std::set<std::pair<std::pair<long long, long long>, uint64_t>> pts;
  long long lim = 2 * static_cast<long long>(stacky::isqrt_u64(T)) + 2;
  for (long long u = 2; u * u <= lim; ++u) {
    for (long long v = 1; v < u; ++v) {
      if (std::gcd(u, v) != 1 || (u - v) % 2 == 0) continue;
      long long o = u * u - v * v, e = 2 * u * v, h = u * u + v * v;
      long long oo = o * o, ee = e * e, hh = h * h;
      auto add = [&](long long x, long long y) {
        uint64_t mx = static_cast<uint64_t>(std::max(x < 0 ? -x : x, y < 0 ? -y : y));
        if (mx <= T) {
          stacky::ProjPoint t = stacky::make_point(x, y);
          pts.insert({{t.x, t.y}, mx});
        }
      };
      add(oo, ee);
      add(ee, oo);
      add(-oo, hh);
      add(-ee, hh);
      add(-hh, oo);
      add(-hh, ee);
    }
  }
  return pts;
}

}  // namespace oracles
