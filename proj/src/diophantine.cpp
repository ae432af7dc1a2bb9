#include "stacky/diophantine.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <thread>

#include "stacky/primes.hpp"

namespace stacky {

namespace {

using i128 = __int128;

long long ll_abs(long long v) { return v < 0 ? -v : v; }

long long checked_ll(i128 v) {
  if (v < -static_cast<i128>(INT64_MAX) || v > static_cast<i128>(INT64_MAX))
    throw std::overflow_error("value exceeds 64 bits");
  return static_cast<long long>(v);
}

i128 eval_form(const TernaryDiagonalForm& f, i128 x, i128 y, i128 z) {
  return static_cast<i128>(f.a) * x * x + static_cast<i128>(f.b) * y * y +
         static_cast<i128>(f.c) * z * z;
}

void check_nonzero(const TernaryDiagonalForm& f) {
  if (f.a == 0 || f.b == 0 || f.c == 0)
    throw std::domain_error("ternary form coefficients must be nonzero");
}

bool all_same_sign(const TernaryDiagonalForm& f) {
  return (f.a > 0 && f.b > 0 && f.c > 0) || (f.a < 0 && f.b < 0 && f.c < 0);
}

// ord-free square-free split: n = sf * s^2.
std::pair<long long, long long> squarefree_split(long long n) {
  long long s = 1, sf = 1;
  for (auto [p, e] : factor_u64(static_cast<uint64_t>(ll_abs(n)))) {
    for (int i = 0; i < e / 2; ++i) s *= static_cast<long long>(p);
    if (e & 1) sf *= static_cast<long long>(p);
  }
  return {n < 0 ? -sf : sf, s};
}

// Local solubility conditions at the odd primes of |modulus|.
bool residue_condition(long long value, long long modulus) {
  for (auto [p, e] : factor_u64(static_cast<uint64_t>(ll_abs(modulus)))) {
    (void)e;
    if (p == 2) continue;
    long long r = value % static_cast<long long>(p);
    if (jacobi(r, p) != 1) return false;
  }
  return true;
}

bool is_perfect_power_u64(uint64_t n, int m) {
  if (n == 0) return false;
  if (m == 1 || n == 1) return true;
  mpz_class z(static_cast<unsigned long>(n)), root;
  return mpz_root(root.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(m)) != 0;
}

}  // namespace

std::array<long long, 3> FormReduction::map_back(const std::array<long long, 3>& w) const {
  std::array<mpq_class, 3> v;
  mpz_class den = 1;
  for (int i = 0; i < 3; ++i) {
    v[i] = back[i] * mpq_class(static_cast<long>(w[i]));
    v[i].canonicalize();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v[i].get_den().get_mpz_t());
  }
  std::array<long long, 3> out{};
  mpz_class g = 0;
  for (int i = 0; i < 3; ++i) {
    mpz_class n = v[i].get_num() * (den / v[i].get_den());
    out[i] = mpz_get_si(n.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  long long gg = mpz_get_si(g.get_mpz_t());
  if (gg > 1) {
    for (auto& c : out) c /= gg;
  }
  return out;
}

FormReduction reduce_form(const TernaryDiagonalForm& f) {
  check_nonzero(f);
  FormReduction fr;
  fr.raw = f;
  std::array<long long, 3> c = {f.a, f.b, f.c};

  long long g = std::gcd(std::gcd(ll_abs(c[0]), ll_abs(c[1])), ll_abs(c[2]));
  for (auto& v : c) v /= g;

  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < 3; ++i) {
      auto [sf, s] = squarefree_split(c[i]);
      if (s != 1) {
        // c_i w^2 = sf (s w)^2; a reduced witness w recovers w/s upstream.
        c[i] = sf;
        fr.back[i] /= mpq_class(static_cast<long>(s));
        changed = true;
      }
    }
    for (int i = 0; i < 3 && !changed; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      long long p = std::gcd(ll_abs(c[i]), ll_abs(c[j]));
      if (p > 1) {
        p = static_cast<long long>(factor_u64(static_cast<uint64_t>(p))[0].first);
        c[i] /= p;
        c[j] /= p;
        c[k] *= p;
        fr.back[k] *= mpq_class(static_cast<long>(p));
        changed = true;
      }
    }
  }
  if (c[0] < 0 && c[1] < 0 && c[2] < 0) {
    for (auto& v : c) v = -v;
  }
  fr.reduced = TernaryDiagonalForm{c[0], c[1], c[2]};
  return fr;
}

FormReduction hasse_form(const ProjPoint& a1, const ProjPoint& a2, const ProjPoint& a3) {
  auto cof = [](const ProjPoint& p, const ProjPoint& q) {
    return checked_ll(static_cast<i128>(p.x) * q.y - static_cast<i128>(q.x) * p.y);
  };
  long long c1 = cof(a2, a3);
  long long c2 = -cof(a1, a3);
  long long c3 = cof(a1, a2);
  if (c1 == 0 || c2 == 0 || c3 == 0)
    throw std::domain_error("hasse_form: points must be pairwise distinct");
  return reduce_form(TernaryDiagonalForm{c1, c2, c3});
}

bool legendre_solvable(const TernaryDiagonalForm& f) {
  check_nonzero(f);
  TernaryDiagonalForm r = reduce_form(f).reduced;
  if (all_same_sign(r)) return false;
  return residue_condition(-r.b * r.c, r.a) && residue_condition(-r.a * r.c, r.b) &&
         residue_condition(-r.a * r.b, r.c);
}

std::optional<std::array<long long, 3>> holzer_search(const TernaryDiagonalForm& f,
                                                      long long search_ceiling) {
  check_nonzero(f);
  if (reduce_form(f).reduced != f)
    throw std::domain_error("holzer_search expects a square-free pairwise-coprime form");

  const std::array<long long, 3> coef = {f.a, f.b, f.c};
  auto holzer_bound = [](long long u, long long v) {
    i128 prod = static_cast<i128>(ll_abs(u)) * ll_abs(v);
    if (prod > static_cast<i128>(UINT64_MAX)) throw SearchBoundExceeded("holzer bound overflows");
    return static_cast<long long>(isqrt_u64(static_cast<uint64_t>(prod)));
  };
  std::array<long long, 3> bound = {holzer_bound(f.b, f.c), holzer_bound(f.a, f.c),
                                    holzer_bound(f.a, f.b)};
  std::array<int, 3> ord = {0, 1, 2};
  std::sort(ord.begin(), ord.end(), [&](int i, int j) { return bound[i] < bound[j]; });
  int i = ord[0], j = ord[1], k = ord[2];
  if (static_cast<i128>(bound[i] + 1) * (bound[j] + 1) > search_ceiling)
    throw SearchBoundExceeded("holzer_search: bound product exceeds ceiling");
  if (!legendre_solvable(f)) return std::nullopt;

  for (long long wi = 0; wi <= bound[i]; ++wi) {
    for (long long wj = 0; wj <= bound[j]; ++wj) {
      if (wi == 0 && wj == 0) continue;
      i128 rest = -(static_cast<i128>(coef[i]) * wi * wi + static_cast<i128>(coef[j]) * wj * wj);
      if (rest % coef[k] != 0) continue;
      i128 sq = rest / coef[k];
      if (sq < 0) continue;
      uint64_t wk;
      if (!is_square_u64(static_cast<uint64_t>(sq), &wk)) continue;
      std::array<long long, 3> w{};
      w[i] = wi;
      w[j] = wj;
      w[k] = static_cast<long long>(wk);
      long long g = std::gcd(std::gcd(w[0], w[1]), w[2]);
      if (g > 1) {
        for (auto& v : w) v /= g;
      }
      if (eval_form(f, w[0], w[1], w[2]) != 0)
        throw std::logic_error("holzer_search: witness does not satisfy the form");
      return w;
    }
  }
  // Holzer's theorem puts a solution inside the searched box whenever the
  // form is soluble.
  throw std::logic_error("holzer_search: soluble form without witness in the Holzer box");
}

int f_S_indicator(uint64_t x1, uint64_t x2, uint64_t x3) {
  const std::array<uint64_t, 3> x = {x1, x2, x3};
  std::array<std::vector<std::pair<uint64_t, int>>, 3> fac;
  for (int i = 0; i < 3; ++i) {
    if (x[i] < 1) throw std::domain_error("f_S_indicator: inputs must be positive");
    fac[i] = factor_u64(x[i]);
    for (auto [p, e] : fac[i]) {
      if (e > 1) throw std::domain_error("f_S_indicator: inputs must be square-free");
    }
  }
  if (std::gcd(x1, x2) != 1 || std::gcd(x1, x3) != 1 || std::gcd(x2, x3) != 1)
    throw std::domain_error("f_S_indicator: inputs must be pairwise coprime");

  // factor i averages (u_i / a) over the odd divisors a | x_i; the value is
  // 1 exactly when u_i is a square mod every odd prime of x_i.
  auto averaged_sum = [](const std::vector<std::pair<uint64_t, int>>& f, i128 u) -> int {
    std::vector<uint64_t> divisors = {1};
    int odd_primes = 0;
    for (auto [p, e] : f) {
      (void)e;
      if (p == 2) continue;
      ++odd_primes;
      size_t n = divisors.size();
      for (size_t t = 0; t < n; ++t) divisors.push_back(divisors[t] * p);
    }
    long long sum = 0;
    for (uint64_t a : divisors) {
      long long r = static_cast<long long>(((u % static_cast<i128>(a)) + static_cast<i128>(a)) % static_cast<i128>(a));
      sum += jacobi(r, a);
    }
    assert(sum == 0 || sum == (1ll << odd_primes));
    return sum == (1ll << odd_primes) ? 1 : 0;
  };

  int v1 = averaged_sum(fac[0], static_cast<i128>(x2) * x3);
  int v2 = averaged_sum(fac[1], static_cast<i128>(x1) * x3);
  int v3 = averaged_sum(fac[2], -static_cast<i128>(x1) * x2);
  return v1 * v2 * v3;
}

mpq_class s_x_sum(uint64_t X, int threads) {
  if (X < 1) throw std::domain_error("s_x_sum: X >= 1");
  SpfSieve sieve(static_cast<uint32_t>(X));
  std::vector<uint8_t> sqfree(X + 1, 0), omega(X + 1, 0);
  sqfree[1] = 1;
  for (uint64_t n = 2; n <= X; ++n) {
    std::vector<std::pair<uint64_t, int>> f;
    sieve.factor(n, f);
    bool sf = true;
    for (auto [p, e] : f) sf = sf && e == 1;
    sqfree[n] = sf;
    omega[n] = static_cast<uint8_t>(f.size());
  }

  int nthreads = std::max(threads, 1);
  std::vector<mpq_class> partial(nthreads, mpq_class(0));
  auto worker = [&](int part) {
    mpq_class acc = 0;
    for (uint64_t a = 1 + part; a <= X; a += nthreads) {
      if (!sqfree[a]) continue;
      for (uint64_t b = 1; a * b <= X; ++b) {
        if (!sqfree[b] || std::gcd(a, b) != 1) continue;
        for (uint64_t c = 1; a * b * c <= X; ++c) {
          if (!sqfree[c] || std::gcd(a, c) != 1 || std::gcd(b, c) != 1) continue;
          if (!f_S_indicator(a, b, c)) continue;
          uint64_t n = a * b * c;
          acc += mpq_class(static_cast<unsigned long>(1ull << (omega[a] + omega[b] + omega[c])),
                           static_cast<unsigned long>(n));
        }
      }
    }
    acc.canonicalize();
    partial[part] = acc;
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  mpq_class sum = 0;
  for (const auto& p : partial) sum += p;
  sum.canonicalize();
  return sum;
}

bool is_integral_point(const StackyCurveP1& curve, const ProjPoint& t) {
  for (const auto& sp : curve.points()) {
    if (!is_perfect_power_u64(lambda(sp, t), sp.multiplicity)) return false;
  }
  return true;
}

namespace {

// Solve alpha_i y - beta_i x = v_i for the first two stacky points; returns
// the primitive point when the system has an integral solution.
std::optional<ProjPoint> solve_two_targets(const StackyCurveP1& curve, i128 v1, i128 v2,
                                           long long det) {
  const auto& p1 = curve.points()[0].point;
  const auto& p2 = curve.points()[1].point;
  i128 xn = static_cast<i128>(p2.x) * v1 - static_cast<i128>(p1.x) * v2;
  i128 yn = static_cast<i128>(p2.y) * v1 - static_cast<i128>(p1.y) * v2;
  if (xn % det != 0 || yn % det != 0) return std::nullopt;
  i128 x = xn / det, y = yn / det;
  if (x == 0 && y == 0) return std::nullopt;
  return make_point(checked_ll(x), checked_ll(y));
}

long long pair_determinant(const StackyCurveP1& curve) {
  const auto& p1 = curve.points()[0].point;
  const auto& p2 = curve.points()[1].point;
  return checked_ll(static_cast<i128>(p1.x) * p2.y - static_cast<i128>(p2.x) * p1.y);
}

}  // namespace

std::optional<ProjPoint> find_integral_point_box(const StackyCurveP1& curve, long long B) {
  if (curve.size() < 2) throw std::domain_error("find_integral_point_box: need >= 2 stacky points");
  long long det = pair_determinant(curve);
  const auto& sp1 = curve.points()[0];
  const auto& sp2 = curve.points()[1];
  uint64_t lim1 = (ll_abs(sp1.point.x) + ll_abs(sp1.point.y)) * static_cast<uint64_t>(B);
  uint64_t lim2 = (ll_abs(sp2.point.x) + ll_abs(sp2.point.y)) * static_cast<uint64_t>(B);

  std::optional<ProjPoint> best;
  auto consider = [&](i128 v1, i128 v2) {
    auto t = solve_two_targets(curve, v1, v2, det);
    if (!t) return;
    if (std::max(ll_abs(t->x), ll_abs(t->y)) > B) return;
    for (const auto& sp : curve.points()) {
      if (sp.point == *t) return;
    }
    if (!is_integral_point(curve, *t)) return;
    if (!best) best = t;
  };

  for (uint64_t w1 = 1; !best; ++w1) {
    uint64_t t1 = 1;
    for (int i = 0; i < sp1.multiplicity; ++i) t1 *= w1;
    if (t1 > lim1) break;
    for (uint64_t w2 = 1; !best; ++w2) {
      uint64_t t2 = 1;
      for (int i = 0; i < sp2.multiplicity; ++i) t2 *= w2;
      if (t2 > lim2) break;
      consider(t1, t2);
      consider(t1, -static_cast<i128>(t2));
      consider(-static_cast<i128>(t1), t2);
      consider(-static_cast<i128>(t1), -static_cast<i128>(t2));
    }
  }
  return best;
}

HasseOutcome hasse_integral_check(const StackyCurveP1& curve, long long search_bound) {
  if (curve.size() != 3) throw std::domain_error("hasse_integral_check: need exactly 3 stacky points");
  for (const auto& sp : curve.points()) {
    if (sp.multiplicity != 2) throw std::domain_error("hasse_integral_check: all multiplicities must be 2");
  }
  const auto& p1 = curve.points()[0].point;
  const auto& p2 = curve.points()[1].point;
  const auto& p3 = curve.points()[2].point;
  FormReduction base = hasse_form(p1, p2, p3);

  // An integral point has |ell_i| = w_i^2 with free signs, so it witnesses
  // one of the four essential sign twists of the cofactor conic (the global
  // flip is absorbed by [x:y] ~ [-x:-y]).
  const std::array<std::array<int, 3>, 4> twists = {
      {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {-1, 1, 1}}};
  FormReduction fr = base;
  HasseOutcome out;
  out.form = base.reduced;
  for (const auto& s : twists) {
    FormReduction cand = reduce_form(TernaryDiagonalForm{s[0] * base.raw.a, s[1] * base.raw.b,
                                                         s[2] * base.raw.c});
    if (legendre_solvable(cand.reduced)) {
      out.conic_soluble = true;
      out.form = cand.reduced;
      fr = cand;
      break;
    }
  }
  if (!out.conic_soluble) return out;  // no twist works: provably no integral points

  out.witness = holzer_search(fr.reduced);
  if (!out.witness) throw std::logic_error("hasse_integral_check: lost the witness");

  // Witness of the (twisted) cofactor form.
  std::array<long long, 3> w = fr.map_back(*out.witness);
  if (eval_form(fr.raw, w[0], w[1], w[2]) != 0)
    throw std::logic_error("hasse_integral_check: transcript mapped a non-witness");

  long long det = pair_determinant(curve);
  auto try_witness = [&](const std::array<long long, 3>& wit) -> std::optional<ProjPoint> {
    i128 d2 = static_cast<i128>(det) * det;
    for (int s1 : {1, -1}) {
      for (int s2 : {1, -1}) {
        i128 v1 = s1 * d2 * wit[0] * wit[0];
        i128 v2 = s2 * d2 * wit[1] * wit[1];
        auto t = solve_two_targets(curve, v1, v2, det);
        if (!t) continue;
        bool stacky = false;
        for (const auto& sp : curve.points()) stacky = stacky || sp.point == *t;
        if (stacky) continue;
        if (is_integral_point(curve, *t)) return t;
      }
    }
    return std::nullopt;
  };

  if (auto t = try_witness(w)) {
    out.integral_point = t;
    out.soluble = true;
    return out;
  }

  // Walk further witnesses through the chord parametrization
  // X(L) = Q(L) w - 2 B(L, w) L.
  const std::array<long long, 3> C = {fr.raw.a, fr.raw.b, fr.raw.c};
  for (long long box = 1; box <= 24 && !out.integral_point; ++box) {
    for (long long l1 = -box; l1 <= box && !out.integral_point; ++l1) {
      for (long long l2 = -box; l2 <= box && !out.integral_point; ++l2) {
        for (long long l3 = -box; l3 <= box && !out.integral_point; ++l3) {
          if (std::max({ll_abs(l1), ll_abs(l2), ll_abs(l3)}) != box) continue;
          i128 q = static_cast<i128>(C[0]) * l1 * l1 + static_cast<i128>(C[1]) * l2 * l2 +
                   static_cast<i128>(C[2]) * l3 * l3;
          i128 bb = static_cast<i128>(C[0]) * l1 * w[0] + static_cast<i128>(C[1]) * l2 * w[1] +
                    static_cast<i128>(C[2]) * l3 * w[2];
          std::array<i128, 3> cand = {q * w[0] - 2 * bb * l1, q * w[1] - 2 * bb * l2,
                                      q * w[2] - 2 * bb * l3};
          if (cand[0] == 0 && cand[1] == 0 && cand[2] == 0) continue;
          long long gg = std::gcd(std::gcd(ll_abs(checked_ll(cand[0])), ll_abs(checked_ll(cand[1]))),
                                  ll_abs(checked_ll(cand[2])));
          std::array<long long, 3> wit = {checked_ll(cand[0] / gg), checked_ll(cand[1] / gg),
                                          checked_ll(cand[2] / gg)};
          if (eval_form(fr.raw, wit[0], wit[1], wit[2]) != 0)
            throw std::logic_error("hasse_integral_check: chord point off the conic");
          if (auto t = try_witness(wit)) out.integral_point = t;
        }
      }
    }
  }

  // Fallback: every integral point is its own witness, so the box search is
  // complete up to search_bound. Twist solubility alone does not settle
  // existence: the curve (-5/7, -1/3, 1/3) has a soluble twist and no
  // integral point with max <= 10^6.
  if (!out.integral_point) out.integral_point = find_integral_point_box(curve, search_bound);
  if (out.integral_point) {
    out.soluble = true;
  } else {
    out.searched_to = search_bound;
  }
  return out;
}

}  // namespace stacky
