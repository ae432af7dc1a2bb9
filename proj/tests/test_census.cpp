#include "doctest.h"

#include <cmath>
#include <numeric>
#include <set>

#include "stacky/census.hpp"
#include "stacky/diophantine.hpp"
#include "stacky/format.hpp"
#include "oracles.hpp"

using namespace stacky;
using oracles::nm_oracle_ladder;

TEST_SUITE("census") {
  TEST_CASE("point enumeration basics") {
    std::vector<ProjPoint> p1 = enumerate_points(1);
    CHECK(p1.size() == 4);
    std::set<std::pair<long long, long long>> s;
    for (const auto& t : p1) s.insert({t.x, t.y});
    CHECK(s == std::set<std::pair<long long, long long>>{{1, 0}, {-1, 1}, {0, 1}, {1, 1}});
    CHECK(enumerate_points(2).size() == 8);

    // no duplicates and every class canonical at B = 40
    std::set<std::pair<long long, long long>> seen;
    for_each_point(40, [&](const ProjPoint& t) {
      CHECK(make_point(t.x, t.y) == t);
      CHECK(seen.insert({t.x, t.y}).second);
    });
  }

  TEST_CASE("coprimality density 2*(6/pi^2)") {
    long long B = 10'000;
    double density = static_cast<double>(count_points(B, 2)) / (static_cast<double>(B) * B);
    double expect = 12.0 / (M_PI * M_PI);
    CHECK(std::abs(density - expect) / expect < 0.02);
  }

  TEST_CASE("partitioned enumeration is deterministic and complete") {
    for (int parts : {2, 3, 7}) {
      uint64_t total = 0;
      for (int part = 0; part < parts; ++part) {
        for_each_point_partition(123, parts, part, [&](const ProjPoint&) { ++total; });
      }
      CHECK(total == count_points(123));
    }
    CHECK(count_points(500, 1) == count_points(500, 3));
  }

  TEST_CASE("n2 census equals the brute-force oracle up to T = 400") {
    std::vector<uint64_t> oracle = nm_oracle_ladder(400, 2);
    std::vector<uint64_t> ladder = nm_count_ladder(400, 2);
    CHECK(ladder == oracle);
    for (uint64_t T : {1ull, 2ull, 7ull, 50ull, 100ull, 399ull, 400ull}) {
      CensusRecord r = n2_count(T);
      CHECK(r.count == oracle[T]);
      CHECK(r.exhaustive);
    }
    CHECK(n2_count(100, 2).count == n2_count(100, 1).count);  // parallel determinism
  }

  TEST_CASE("n2 monotone in T") {
    uint64_t prev = 0;
    for (uint64_t T = 1; T <= 60; ++T) {
      uint64_t c = n2_count(T).count;
      CHECK(c >= prev);
      prev = c;
    }
  }

  TEST_CASE("nm census equals its oracle and reduces to n2 at m = 2") {
    for (int m : {2, 3, 4}) {
      std::vector<uint64_t> oracle = nm_oracle_ladder(150, m);
      std::vector<uint64_t> ladder = nm_count_ladder(150, m);
      CHECK(ladder == oracle);
      CHECK(nm_count(150, m).count == oracle[150]);
      CHECK(nm_count(77, m, 2).count == oracle[77]);
    }
    CHECK(nm_count(200, 2).count == n2_count(200).count);
  }

  TEST_CASE("gaussian-cube family injects into the m = 3 census") {
    // x = u(u^2-3v^2), y = v(3u^2-v^2): x^2 + y^2 = (u^2+v^2)^3, so the point
    // [x^2 : y^2] has trivial stacky contributions and height max(x^2, y^2).
    uint64_t Tmax = 4000;
    std::vector<uint64_t> ladder = nm_count_ladder(Tmax, 3);
    std::set<std::pair<long long, long long>> family;
    for (long long u = 1; u <= 8; ++u) {
      for (long long v = 1; v <= 8; ++v) {
        if (std::gcd(u, v) != 1) continue;
        long long x = u * (u * u - 3 * v * v);
        long long y = v * (3 * u * u - v * v);
        if (x == 0 || y == 0 || x + y == 0) continue;
        long long X = x * x, Y = y * y;
        if (std::gcd(X, Y) != 1) continue;
        ProjPoint t = make_point(X, Y);
        uint64_t mx = static_cast<uint64_t>(std::max(std::llabs(X), std::llabs(Y)));
        if (mx > Tmax) continue;
        PowerFreeDecomposition d = power_free_decompose(X + Y, 3);
        REQUIRE(d.parts[0] == 1);
        REQUIRE(d.parts[1] == 1);
        REQUIRE(sqf(X) == 1);
        REQUIRE(sqf(Y) == 1);
        CHECK(ladder[mx] > ladder[mx - 1]);  // the height-mx bucket holds this point
        family.insert({t.x, t.y});
      }
    }
    CHECK(family.size() >= 3);
    CHECK(ladder[Tmax] >= family.size());
  }

  TEST_CASE("integral census matches a tiny direct search and the pythagorean oracle") {
    // direct: all canonical points with max <= T and three square lambdas
    auto direct = [](uint64_t T) {
      uint64_t count = 0;
      for_each_point(static_cast<long long>(T), [&](const ProjPoint& t) {
        if (t.x == 0 || t.y == 0 || t.x + t.y == 0) return;
        auto is_sq = [](long long v) {
          uint64_t a = static_cast<uint64_t>(v < 0 ? -v : v);
          return is_square_u64(a);
        };
        if (is_sq(t.x) && is_sq(t.y) && is_sq(t.x + t.y)) ++count;
      });
      return count;
    };
    for (uint64_t T : {1ull, 25ull, 100ull, 400ull, 2000ull}) {
      CHECK(integral_census_222(T).count == direct(T));
    }

    // pythagorean parametrization oracle
    for (uint64_t T : {100ull, 1000ull, 10000ull, 100000ull}) {
      CHECK(integral_census_222(T).count == oracles::pythagorean_points(T).size());
    }
  }

  TEST_CASE("every pythagorean point is integral") {
    StackyCurveP1 curve = parse_curve("0:2,inf:2,-1:2");
    for (long long u = 2; u <= 9; ++u) {
      for (long long v = 1; v < u; ++v) {
        if (std::gcd(u, v) != 1 || (u - v) % 2 == 0) continue;
        long long o = u * u - v * v, e = 2 * u * v;
        ProjPoint t = make_point(o * o, e * e);
        CHECK(is_integral_point(curve, t));
      }
    }
  }

  TEST_CASE("generic census cross-checks n2 and handles the chi = 0 family") {
    StackyCurveP1 c222 = parse_curve("0:2,inf:2,-1:2");
    // anticanonical (2,2,2): H^2 = H2 (both are sqf * sqf * sqf * max), so
    // counting H <= sqrt(T) in the generic census is counting H2 <= T.
    for (uint64_t T : {16ull, 100ull, 144ull}) {
      uint64_t root = isqrt_u64(T);
      REQUIRE(root * root == T);
      CensusRecord g = generic_bounded_height_census(c222, anticanonical_bundle(c222), root,
                                                     static_cast<long long>(T));
      CHECK(g.exhaustive);
      CHECK(g.count == n2_count(T).count);
    }

    // chi = 0 curve (2,2,2,2) at points x = (u^2-v^2)^2, y = 4u^2v^2:
    // H^2 = sqf(F_{a,b}) for the fourth form F = a x + b y, whose stacky
    // point in [alpha:beta] coordinates is [b:-a].
    long long a = 17, b = -118;
    StackyCurveP1 c4(std::vector<StackyPoint>{{make_point(0, 1), 2},
                                              {make_point(1, 0), 2},
                                              {make_point(-1, 1), 2},
                                              {make_point(b, -a), 2}});
    for (long long u = 2; u <= 7; ++u) {
      for (long long v = 1; v < u; ++v) {
        if (std::gcd(u, v) != 1 || (u - v) % 2 == 0) continue;
        long long x = (u * u - v * v) * (u * u - v * v);
        long long y = 4 * u * u * v * v;
        if (std::gcd(x, y) != 1) continue;
        ProjPoint t = make_point(x, y);
        long long F = a * x + b * y;
        if (F == 0) continue;
        ExactHeight h = anticanonical_height(c4, t);
        CHECK(h.lcm_power == 2);
        CHECK(h.value == sqf(F));
      }
    }
  }

  TEST_CASE("generic census exhaustive flag honors the degree bound") {
    StackyCurveP1 c = parse_curve("0:2,inf:2,-1:2");
    // chi = 1/2: H <= T forces max <= T^2
    CensusRecord r1 = generic_bounded_height_census(c, anticanonical_bundle(c), 5, 25);
    CHECK(r1.exhaustive);
    CensusRecord r2 = generic_bounded_height_census(c, anticanonical_bundle(c), 5, 24);
    CHECK(!r2.exhaustive);
    CHECK(r1.count >= r2.count);
    // B ladder monotonicity at fixed T
    CensusRecord r3 = generic_bounded_height_census(c, anticanonical_bundle(c), 5, 12);
    CHECK(r3.count <= r2.count);
  }

  TEST_CASE("ratio table") {
    CHECK(ratio_table({}, 0.5, 3).empty());
    std::vector<CensusRecord> recs = {n2_count(64), n2_count(128)};
    std::vector<RatioRow> rows = ratio_table(recs, 0.5, 3);
    REQUIRE(rows.size() == 2);
    double model = std::sqrt(64.0) * std::pow(std::log(64.0), 3);
    CHECK(rows[0].ratio == doctest::Approx(static_cast<double>(recs[0].count) / model));
  }
}
