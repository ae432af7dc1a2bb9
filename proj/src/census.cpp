#include "stacky/census.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "stacky/primes.hpp"

namespace stacky {

namespace {

using u128 = unsigned __int128;

uint64_t ull_abs(long long v) { return v < 0 ? static_cast<uint64_t>(-(unsigned long long)v) : static_cast<uint64_t>(v); }

// a*b, saturating at cap+1 so oversize products stay comparable.
u128 mul_capped(u128 a, u128 b, u128 cap) {
  if (b != 0 && a > cap / b) return cap + 1;
  return a * b;
}

u128 pow_capped(u128 a, int e, u128 cap) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) {
    r = mul_capped(r, a, cap);
    if (r > cap) return r;
  }
  return r;
}

template <typename RowFn>
void run_rows(long long rows, int threads, RowFn&& fn) {
  if (threads <= 1) {
    for (long long y = 1; y <= rows; ++y) fn(y);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (long long y = 1 + t; y <= rows; y += threads) fn(y);
    });
  }
  for (auto& th : pool) th.join();
}

// Exact N_m height test at one point, shared by the per-T census and the
// ladder sweep. Returns H_m^2 capped at cap+1.
u128 nm_height_sq(long long x, long long y, int m, const std::vector<uint64_t>& sqf_table,
                  const SpfSieve& sieve, u128 cap) {
  uint64_t ax = ull_abs(x), ay = ull_abs(y), as = ull_abs(x + y);
  uint64_t x1 = sqf_table[ax], y1 = sqf_table[ay];
  uint64_t mx = std::max(ax, ay);
  u128 h = pow_capped(u128(x1) * y1, m, cap);
  h = mul_capped(h, mul_capped(u128(mx), mx, cap), cap);
  if (h > cap) return h;
  // z-block of x+y: prod_{j<m} z_j^{m-j}, squared.
  std::vector<std::pair<uint64_t, int>> fac;
  sieve.factor(as, fac);
  for (auto [p, e] : fac) {
    int r = e % m;
    if (r != 0) {
      h = mul_capped(h, pow_capped(p, 2 * (m - r), cap), cap);
      if (h > cap) return h;
    }
  }
  return h;
}

}  // namespace

std::vector<ProjPoint> enumerate_points(long long B) {
  std::vector<ProjPoint> pts;
  for_each_point(B, [&](const ProjPoint& t) { pts.push_back(t); });
  return pts;
}

uint64_t count_points(long long B, int threads) {
  std::vector<uint64_t> counts(std::max(threads, 1), 0);
  if (threads <= 1) {
    for_each_point(B, [&](const ProjPoint&) { ++counts[0]; });
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t]() { for_each_point_partition(B, threads, t, [&](const ProjPoint&) { ++counts[t]; }); });
    }
    for (auto& th : pool) th.join();
  }
  uint64_t total = 0;
  for (uint64_t c : counts) total += c;
  return total;
}

CensusRecord n2_count(uint64_t T, int threads) {
  if (T < 1) throw std::domain_error("n2_count: T >= 1");
  long long B = static_cast<long long>(T);
  std::vector<uint64_t> sq = squarefree_part_table(2 * T + 1);
  std::vector<uint64_t> partial(std::max(threads, 1), 0);
  const u128 cap = T;
  run_rows(B, std::max(threads, 1), [&](long long y) {
    uint64_t y1 = sq[y];
    // H >= sqf(y) * max >= sqf(y) * y, so heavy rows are empty.
    if (u128(y1) * u128(y) > cap) return;
    uint64_t& acc = partial[(y - 1) % std::max(threads, 1)];
    for (long long x = -B; x <= B; ++x) {
      if (x == 0 || x == -y) continue;
      uint64_t ax = ull_abs(x);
      uint64_t mx = std::max(ax, static_cast<uint64_t>(y));
      u128 h = u128(y1) * sq[ax] * mx;
      if (h > cap) continue;
      h = mul_capped(h, sq[ull_abs(x + y)], cap);
      if (h > cap) continue;
      if (std::gcd(ax, static_cast<uint64_t>(y)) != 1) continue;
      ++acc;
    }
  });
  uint64_t total = 0;
  for (uint64_t c : partial) total += c;
  return CensusRecord{T, total, B, true};
}

CensusRecord nm_count(uint64_t T, int m, int threads) {
  if (m < 2) throw std::domain_error("nm_count: m >= 2");
  if (T < 1) throw std::domain_error("nm_count: T >= 1");
  long long B = static_cast<long long>(T);
  std::vector<uint64_t> sq = squarefree_part_table(2 * T + 1);
  SpfSieve sieve(static_cast<uint32_t>(2 * T + 1));
  const u128 cap = u128(T) * T;
  std::vector<uint64_t> partial(std::max(threads, 1), 0);
  run_rows(B, std::max(threads, 1), [&](long long y) {
    uint64_t y1 = sq[y];
    if (mul_capped(pow_capped(y1, m, cap), u128(y) * u128(y), cap) > cap) return;
    uint64_t& acc = partial[(y - 1) % std::max(threads, 1)];
    for (long long x = -B; x <= B; ++x) {
      if (x == 0 || x == -y) continue;
      uint64_t ax = ull_abs(x);
      if (std::gcd(ax, static_cast<uint64_t>(y)) != 1) continue;
      if (nm_height_sq(x, y, m, sq, sieve, cap) <= cap) ++acc;
    }
  });
  uint64_t total = 0;
  for (uint64_t c : partial) total += c;
  return CensusRecord{T, total, B, true};
}

std::vector<uint64_t> nm_count_ladder(uint64_t Tmax, int m) {
  if (m < 2 || Tmax < 1) throw std::domain_error("nm_count_ladder: m >= 2, Tmax >= 1");
  long long B = static_cast<long long>(Tmax);
  std::vector<uint64_t> sq = squarefree_part_table(2 * Tmax + 1);
  SpfSieve sieve(static_cast<uint32_t>(2 * Tmax + 1));
  const u128 cap = u128(Tmax) * Tmax;
  std::vector<uint64_t> hist(Tmax + 1, 0);
  for (long long y = 1; y <= B; ++y) {
    for (long long x = -B; x <= B; ++x) {
      if (x == 0 || x == -y) continue;
      uint64_t ax = ull_abs(x);
      if (std::gcd(ax, static_cast<uint64_t>(y)) != 1) continue;
      u128 h2 = nm_height_sq(x, y, m, sq, sieve, cap);
      if (h2 > cap) continue;
      uint64_t h = isqrt_u64(static_cast<uint64_t>(h2));
      // H_m is the square root of h2; it lands in bucket ceil(sqrt(h2)).
      if (u128(h) * h < h2) ++h;
      if (h <= Tmax) ++hist[h];
    }
  }
  std::vector<uint64_t> counts(Tmax + 1, 0);
  for (uint64_t t = 1; t <= Tmax; ++t) counts[t] = counts[t - 1] + hist[t];
  return counts;
}

CensusRecord integral_census_222(uint64_t T) {
  if (T < 1) throw std::domain_error("integral_census_222: T >= 1");
  uint64_t R = isqrt_u64(T);  // |x|, |y| are squares <= T
  uint64_t count = 0;
  for (uint64_t a = 1; a <= R; ++a) {
    for (uint64_t b = 1; b <= R; ++b) {
      if (std::gcd(a, b) != 1) continue;
      uint64_t x2 = a * a, y2 = b * b;
      // [x2 : y2]
      if (is_square_u64(x2 + y2)) ++count;
      // [-x2 : y2], excluding the stacky point x + y = 0
      if (a != b && is_square_u64(x2 > y2 ? x2 - y2 : y2 - x2)) ++count;
    }
  }
  return CensusRecord{T, count, static_cast<long long>(T), true};
}

CensusRecord generic_bounded_height_census(const StackyCurveP1& curve, const LineBundle& bundle,
                                           uint64_t T, long long B, int threads) {
  mpq_class deg = bundle.total_degree(curve);
  long long L = curve.lcm();
  mpz_class Tl;
  mpz_ui_pow_ui(Tl.get_mpz_t(), static_cast<unsigned long>(T), static_cast<unsigned long>(L));
  mpq_class bound(Tl);

  bool exhaustive = false;
  if (deg > 0) {
    // H >= max^{deg}, so H <= T forces max <= T^{1/deg}.
    mpq_class ldeg_q = deg * mpq_class(static_cast<long>(L));
    assert(ldeg_q.get_den() == 1);
    unsigned long ldeg = static_cast<unsigned long>(mpz_get_ui(ldeg_q.get_num().get_mpz_t()));
    mpz_class breq;
    mpz_root(breq.get_mpz_t(), Tl.get_mpz_t(), ldeg);  // floor((T^L)^{1/(L deg)})
    exhaustive = mpz_cmp_si(breq.get_mpz_t(), B) <= 0;
  }

  int nthreads = std::max(threads, 1);
  std::vector<uint64_t> partial(nthreads, 0);
  auto worker = [&](int part) {
    for_each_point_partition(B, nthreads, part, [&](const ProjPoint& t) {
      for (const auto& sp : curve.points()) {
        if (sp.point == t) return;  // heights undefined at stacky points
      }
      ExactHeight h = height(curve, bundle, t);
      if (h.value <= bound) ++partial[part];
    });
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  uint64_t total = 0;
  for (uint64_t c : partial) total += c;
  return CensusRecord{T, total, B, exhaustive};
}

std::vector<RatioRow> ratio_table(const std::vector<CensusRecord>& records, double model_exponent,
                                  int log_power) {
  std::vector<RatioRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    double model = std::pow(static_cast<double>(r.T), model_exponent) *
                   std::pow(std::log(static_cast<double>(r.T)), log_power);
    rows.push_back(RatioRow{r.T, r.count, r.search_bound, r.exhaustive,
                            model > 0 ? static_cast<double>(r.count) / model : 0.0});
  }
  return rows;
}

}  // namespace stacky
