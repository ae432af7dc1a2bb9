#include "doctest.h"

#include <cmath>
#include <numeric>

#include "stacky/census.hpp"
#include "stacky/diophantine.hpp"
#include "stacky/format.hpp"

using namespace stacky;

namespace {

// Solubility oracle by bounded search over primitive triples.
bool search_solvable(const TernaryDiagonalForm& f, long long B) {
  for (long long x = 0; x <= B; ++x) {
    for (long long y = 0; y <= B; ++y) {
      for (long long z = 0; z <= B; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        __int128 v = static_cast<__int128>(f.a) * x * x + static_cast<__int128>(f.b) * y * y +
                     static_cast<__int128>(f.c) * z * z;
        if (v == 0) return true;
      }
    }
  }
  return false;
}

bool admissible(uint64_t x1, uint64_t x2, uint64_t x3) {
  return sqf(static_cast<long long>(x1)) == x1 && sqf(static_cast<long long>(x2)) == x2 &&
         sqf(static_cast<long long>(x3)) == x3 && std::gcd(x1, x2) == 1 && std::gcd(x1, x3) == 1 &&
         std::gcd(x2, x3) == 1;
}

}  // namespace

TEST_SUITE("diophantine") {
  TEST_CASE("hasse_form cofactors") {
    // [1:-1] canonicalizes to [-1:1], which negates the first two cofactors:
    // the literal-representative form (-1, 1, -1) becomes (1, -1, -1); the
    // two agree up to relabeling y1 <-> y2.
    FormReduction fr = hasse_form(make_point(0, 1), make_point(1, 0), make_point(1, -1));
    CHECK(fr.raw == TernaryDiagonalForm{1, -1, -1});
    CHECK(legendre_solvable(fr.raw));  // y1^2 = y2^2 + y3^2
    // collinear / duplicate input is degenerate
    CHECK_THROWS_AS(hasse_form(make_point(0, 1), make_point(0, 1), make_point(1, 0)),
                    std::domain_error);
  }

  TEST_CASE("form reduction") {
    // squares absorbed, shared primes moved across, transcript maps back
    FormReduction fr = reduce_form(TernaryDiagonalForm{18, 5, -4});
    TernaryDiagonalForm r = fr.reduced;
    for (long long v : {r.a, r.b, r.c}) {
      CHECK(sqf(v) == (v < 0 ? -v : v));
    }
    CHECK(std::gcd(std::llabs(r.a), std::llabs(r.b)) == 1);
    CHECK(std::gcd(std::llabs(r.a), std::llabs(r.c)) == 1);
    CHECK(std::gcd(std::llabs(r.b), std::llabs(r.c)) == 1);
    // all-negative forms get flipped
    CHECK(reduce_form(TernaryDiagonalForm{-2, -3, -5}).reduced.a > 0);

    // a witness of the reduced form maps to a solution of the raw form
    if (legendre_solvable(r)) {
      auto w = holzer_search(r);
      REQUIRE(w);
      auto raw_w = fr.map_back(*w);
      __int128 v = static_cast<__int128>(fr.raw.a) * raw_w[0] * raw_w[0] +
                   static_cast<__int128>(fr.raw.b) * raw_w[1] * raw_w[1] +
                   static_cast<__int128>(fr.raw.c) * raw_w[2] * raw_w[2];
      CHECK(v == 0);
    }
  }

  TEST_CASE("legendre criterion on known forms") {
    CHECK(legendre_solvable(TernaryDiagonalForm{1, 1, -1}));
    CHECK(!legendre_solvable(TernaryDiagonalForm{1, 1, 1}));
    CHECK(!legendre_solvable(TernaryDiagonalForm{1, 1, -3}));
    CHECK(!search_solvable(TernaryDiagonalForm{1, 1, -3}, 100));
    CHECK(legendre_solvable(TernaryDiagonalForm{1, 1, -2}));
    CHECK(legendre_solvable(TernaryDiagonalForm{2, 3, -5}));
    CHECK_THROWS_AS(legendre_solvable(TernaryDiagonalForm{0, 1, -1}), std::domain_error);
  }

  TEST_CASE("legendre agrees with bounded search on small forms") {
    for (long long a = 1; a <= 7; ++a) {
      for (long long b = 1; b <= 7; ++b) {
        for (long long c = -7; c <= -1; ++c) {
          TernaryDiagonalForm f{a, b, c};
          bool lg = legendre_solvable(f);
          bool sr = search_solvable(f, 60);
          // the search bound is generous enough at this size
          CHECK(lg == sr);
        }
      }
    }
  }

  TEST_CASE("holzer_search finds bounded witnesses") {
    auto w = holzer_search(TernaryDiagonalForm{1, 1, -1});
    REQUIRE(w);
    auto check_form = [](const TernaryDiagonalForm& f, const std::array<long long, 3>& v) {
      return static_cast<__int128>(f.a) * v[0] * v[0] + static_cast<__int128>(f.b) * v[1] * v[1] +
                 static_cast<__int128>(f.c) * v[2] * v[2] ==
             0;
    };
    CHECK(check_form(TernaryDiagonalForm{1, 1, -1}, *w));
    CHECK(!holzer_search(TernaryDiagonalForm{1, 1, 1}).has_value());

    for (long long a = 1; a <= 6; ++a) {
      for (long long b = a; b <= 6; ++b) {
        for (long long c = -6; c <= -1; ++c) {
          TernaryDiagonalForm f{a, b, c};
          if (reduce_form(f).reduced != f) continue;
          auto wit = holzer_search(f);
          CHECK(wit.has_value() == legendre_solvable(f));
          if (wit) {
            CHECK(check_form(f, *wit));
            CHECK(std::gcd(std::gcd((*wit)[0], (*wit)[1]), (*wit)[2]) <= 1);
            CHECK(static_cast<uint64_t>(std::llabs((*wit)[0]) * std::llabs((*wit)[0])) <=
                  static_cast<uint64_t>(std::llabs(f.b) * std::llabs(f.c)));
            CHECK(static_cast<uint64_t>(std::llabs((*wit)[1]) * std::llabs((*wit)[1])) <=
                  static_cast<uint64_t>(std::llabs(f.a) * std::llabs(f.c)));
            CHECK(static_cast<uint64_t>(std::llabs((*wit)[2]) * std::llabs((*wit)[2])) <=
                  static_cast<uint64_t>(std::llabs(f.a) * std::llabs(f.b)));
          }
        }
      }
    }
    CHECK_THROWS_AS(holzer_search(TernaryDiagonalForm{1000003, 1000033, -1000037}, 100),
                    SearchBoundExceeded);
  }

  TEST_CASE("f_S examples and the three-way agreement") {
    CHECK(f_S_indicator(1, 1, 1) == 1);
    CHECK(f_S_indicator(3, 1, 1) == 1);  // witness (1,1,2)
    CHECK(f_S_indicator(1, 1, 3) == 0);  // x^2 + y^2 = 3 z^2 is insoluble
    CHECK_THROWS_AS(f_S_indicator(4, 1, 1), std::domain_error);
    CHECK_THROWS_AS(f_S_indicator(3, 6, 1), std::domain_error);

    for (uint64_t x1 = 1; x1 <= 100; ++x1) {
      for (uint64_t x2 = 1; x1 * x2 <= 100; ++x2) {
        for (uint64_t x3 = 1; x1 * x2 * x3 <= 100; ++x3) {
          if (!admissible(x1, x2, x3)) continue;
          TernaryDiagonalForm f{static_cast<long long>(x1), static_cast<long long>(x2),
                                -static_cast<long long>(x3)};
          int ind = f_S_indicator(x1, x2, x3);
          bool lg = legendre_solvable(f);
          auto wit = holzer_search(f);
          CHECK(ind == (lg ? 1 : 0));
          CHECK(lg == wit.has_value());
        }
      }
    }
  }

  TEST_CASE("s_x_sum exact values") {
    CHECK(s_x_sum(1) == 1);
    // independent accumulation for X = 10 straight from the definition
    mpq_class expect = 0;
    for (uint64_t a = 1; a <= 10; ++a) {
      for (uint64_t b = 1; a * b <= 10; ++b) {
        for (uint64_t c = 1; a * b * c <= 10; ++c) {
          if (!admissible(a, b, c)) continue;
          if (!legendre_solvable(TernaryDiagonalForm{(long long)a, (long long)b, -(long long)c}))
            continue;
          uint64_t n = a * b * c;
          uint64_t divisors = 0;
          for (uint64_t d = 1; d <= n; ++d) divisors += n % d == 0;
          expect += mpq_class(divisors, n);
        }
      }
    }
    expect.canonicalize();
    CHECK(s_x_sum(10) == expect);
    CHECK(s_x_sum(40, 2) == s_x_sum(40, 1));  // parallel determinism
  }

  TEST_CASE("s_x_sum stays banded against (log X)^3") {
    double lo = 1e300, hi = 0;
    for (uint64_t X : {100ull, 1000ull, 10000ull}) {
      double ratio = s_x_sum(X, 2).get_d() / std::pow(std::log(static_cast<double>(X)), 3);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    CHECK(lo > 0);
    CHECK(hi / lo <= 3.0);
  }

  TEST_CASE("is_integral_point") {
    StackyCurveP1 c = parse_curve("0:2,inf:2,-1:2");
    CHECK(is_integral_point(c, make_point(9, 16)));
    CHECK(!is_integral_point(c, make_point(3, 4)));
    StackyCurveP1 single = parse_curve("-1:3");
    CHECK(is_integral_point(single, make_point(5, 3)));  // x + y = 8 = 2^3
    CHECK(!is_integral_point(single, make_point(5, 2)));
  }

  TEST_CASE("integral points are exactly the trivial-stacky-part points") {
    for (const char* spec : {"0:2,inf:2,-1:2", "0:2,inf:3,-1:7", "2/3:4,-1:2"}) {
      StackyCurveP1 c = parse_curve(spec);
      LineBundle ones{0, std::vector<int>(c.size(), 1)};
      int hits = 0;
      for_each_point(40, [&](const ProjPoint& t) {
        for (const auto& sp : c.points()) {
          if (sp.point == t) return;
        }
        bool integral = is_integral_point(c, t);
        bool trivial = stacky_part(c, ones, t).value == 1;
        CHECK(integral == trivial);
        hits += integral;
      });
      CHECK(hits >= 0);
    }
  }

  TEST_CASE("divisor count of square-free products is 2^omega") {
    for (uint64_t n = 1; n <= 10000; ++n) {
      if (sqf(static_cast<long long>(n)) != n) continue;
      uint64_t divisors = 0;
      for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) divisors += d * d == n ? 1 : 2;
      }
      CHECK(divisors == (1ull << factor(static_cast<long long>(n)).factors.size()));
    }
  }

  TEST_CASE("hasse pipeline on the standard curve") {
    StackyCurveP1 c = parse_curve("0:2,inf:2,-1:2");
    HasseOutcome res = hasse_integral_check(c);
    CHECK(res.soluble);
    REQUIRE(res.witness);
    REQUIRE(res.integral_point);
    CHECK(is_integral_point(c, *res.integral_point));

    // permuting the stacky points flips rows but not the verdict
    StackyCurveP1 perm = parse_curve("-1:2,0:2,inf:2");
    HasseOutcome res2 = hasse_integral_check(perm);
    CHECK(res2.soluble == res.soluble);
    REQUIRE(res2.integral_point);
    CHECK(is_integral_point(perm, *res2.integral_point));
  }

  TEST_CASE("hasse pipeline handles sign twists of the cofactor conic") {
    // (7/3, -4/5, 1/2): the untwisted cofactor form (-13, -11, 47) has no
    // rational point, yet [1:1] is integral with ell-signs (+, -, -); the
    // corresponding twist is soluble and the pipeline must find it.
    StackyCurveP1 c = parse_curve("7/3:2,-4/5:2,1/2:2");
    FormReduction fr = hasse_form(make_point(7, 3), make_point(-4, 5), make_point(1, 2));
    CHECK(fr.raw == TernaryDiagonalForm{-13, -11, 47});
    CHECK(!legendre_solvable(fr.reduced));
    CHECK(is_integral_point(c, make_point(1, 1)));
    HasseOutcome res = hasse_integral_check(c);
    CHECK(res.soluble);
    REQUIRE(res.integral_point);
    CHECK(is_integral_point(c, *res.integral_point));
  }

  TEST_CASE("twist solubility does not force integral points") {
    // (-5/7, -1/3, 1/3): the (+,+,-) twist of the cofactor conic is soluble,
    // but the reconstruction is stuck in a nontrivial square class; there is
    // no integral point with max <= 10^6 (checked offline), so the verdict
    // is censored at the search bound.
    StackyCurveP1 c = parse_curve("-5/7:2,-1/3:2,1/3:2");
    HasseOutcome res = hasse_integral_check(c, 20000);
    CHECK(res.conic_soluble);
    CHECK(!res.soluble);
    CHECK(!res.integral_point.has_value());
    CHECK(res.searched_to == 20000);
  }

  TEST_CASE("hasse pipeline flags an insoluble curve") {
    // points 0, inf, 1 give the conic with y1^2 + y3^2 = y2^2-shape reversed:
    // cofactors (1,-1,1) ~ x^2 + z^2 = y^2 is soluble, so build one that is
    // not: 0, inf, 3 -> lambda targets x, y, 3y - x... use the form check.
    // Curve ((0,2),(inf,2),(3,2)): integral points need x, y, |3y - x| all
    // squares; the conic is w2^2... verdict must match the box search.
    for (const char* spec : {"0:2,inf:2,3:2", "0:2,inf:2,-3:2", "0:2,inf:2,7:2"}) {
      StackyCurveP1 c = parse_curve(spec);
      HasseOutcome res = hasse_integral_check(c);
      auto boxed = find_integral_point_box(c, 5000);
      if (res.soluble) {
        REQUIRE(res.integral_point);
        CHECK(is_integral_point(c, *res.integral_point));
      } else {
        CHECK(!boxed.has_value());
      }
    }
  }

  TEST_CASE("box search finds the smallest pythagorean point") {
    StackyCurveP1 c = parse_curve("0:2,inf:2,-1:2");
    auto t = find_integral_point_box(c, 100);
    REQUIRE(t);
    CHECK(is_integral_point(c, *t));
    CHECK(std::max(std::llabs(t->x), std::llabs(t->y)) <= 100);
  }
}
