#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "stacky/curve.hpp"

namespace stacky {

struct CensusRecord {
  uint64_t T = 0;
  uint64_t count = 0;
  long long search_bound = 0;
  bool exhaustive = false;
};

// Canonical points of P^1(Q) with max(|x|,|y|) <= B, each class exactly once:
// [1:0], then rows y = 1..B with x = -B..B, gcd(|x|, y) = 1.
// Partitioning slices the x-range; part 0 of 1 is the full enumeration.
template <typename Fn>
void for_each_point_partition(long long B, int parts, int part, Fn&& fn) {
  long long span = 2 * B + 1;
  long long lo = -B + span * part / parts;
  long long hi = -B + span * (part + 1) / parts;
  if (1 >= lo && 1 < hi && B >= 1) fn(ProjPoint{1, 0});
  for (long long y = 1; y <= B; ++y) {
    for (long long x = lo; x < hi; ++x) {
      if (std::gcd(x < 0 ? -x : x, y) == 1) fn(ProjPoint{x, y});
    }
  }
}

template <typename Fn>
void for_each_point(long long B, Fn&& fn) {
  for_each_point_partition(B, 1, 0, fn);
}

std::vector<ProjPoint> enumerate_points(long long B);
uint64_t count_points(long long B, int threads = 1);

// N_2(T): exact count on X(P^1 : (0,2), (inf,2), (-1,2)) with
// H_2 = sqf(x) sqf(y) sqf(x+y) max(|x|,|y|) <= T. Always exhaustive.
CensusRecord n2_count(uint64_t T, int threads = 1);

// N_m(T) on X(P^1 : (0,2), (inf,2), (-1,m)) with the m-power normalized
// height of the census normalization (classical exponent 1).
CensusRecord nm_count(uint64_t T, int m, int threads = 1);

// counts[t] = N(t) for every t <= Tmax, from one sweep.
std::vector<uint64_t> nm_count_ladder(uint64_t Tmax, int m);

// Integral points of the standard (2,2,2) curve: sqf of x, y, x+y all 1,
// max(|x|,|y|) <= T.
CensusRecord integral_census_222(uint64_t T);

// Generic bounded-height census: points with max <= B and height <= T for the
// given bundle. Exhaustive only when deg > 0 pins max <= T^{1/deg} <= B.
CensusRecord generic_bounded_height_census(const StackyCurveP1& curve, const LineBundle& bundle,
                                           uint64_t T, long long B, int threads = 1);

struct RatioRow {
  uint64_t T = 0;
  uint64_t count = 0;
  long long search_bound = 0;
  bool exhaustive = false;
  double ratio = 0.0;  // count / (T^e (log T)^k)
};

std::vector<RatioRow> ratio_table(const std::vector<CensusRecord>& records, double model_exponent,
                                  int log_power);

}  // namespace stacky
