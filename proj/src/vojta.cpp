#include "stacky/vojta.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "stacky/census.hpp"
#include "stacky/primes.hpp"

namespace stacky {

namespace {

using u128 = unsigned __int128;

long long ll_abs(long long v) { return v < 0 ? -v : v; }

}  // namespace

LogCombo LogCombo::log_of(uint64_t n) {
  LogCombo lc;
  lc.add(1, n);
  return lc;
}

LogCombo& LogCombo::add(const mpq_class& coeff, uint64_t n) {
  if (n == 0) throw std::domain_error("log of nonpositive integer");
  if (n == 1 || coeff == 0) return *this;
  mpq_class& slot = terms_[n];
  slot += coeff;
  slot.canonicalize();
  if (slot == 0) terms_.erase(n);
  return *this;
}

LogCombo& LogCombo::operator+=(const LogCombo& o) {
  for (const auto& [n, q] : o.terms_) add(q, n);
  return *this;
}

LogCombo& LogCombo::operator-=(const LogCombo& o) {
  for (const auto& [n, q] : o.terms_) add(-q, n);
  return *this;
}

LogCombo LogCombo::scaled(const mpq_class& s) const {
  LogCombo out;
  if (s == 0) return out;
  for (const auto& [n, q] : terms_) out.add(q * s, n);
  return out;
}

int LogCombo::sign() const {
  if (terms_.empty()) return 0;
  mpz_class den = 1;
  for (const auto& [n, q] : terms_) {
    (void)n;
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  }
  mpz_class pos = 1, neg = 1, pw;
  for (const auto& [n, q] : terms_) {
    mpz_class e = q.get_num() * (den / q.get_den());
    bool negative = e < 0;
    mpz_class ae = negative ? mpz_class(-e) : e;
    if (!ae.fits_ulong_p()) throw std::overflow_error("log comparison exponent too large");
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(n), ae.get_ui());
    (negative ? neg : pos) *= pw;
  }
  return ::cmp(pos, neg) > 0 ? 1 : (::cmp(pos, neg) < 0 ? -1 : 0);
}

double LogCombo::approx() const {
  double v = 0;
  for (const auto& [n, q] : terms_) v += q.get_d() * std::log(static_cast<double>(n));
  return v;
}

bool log_geq(const LogCombo& a, const LogCombo& b) {
  LogCombo d = a;
  d -= b;
  return d.sign() >= 0;
}

mpq_class LPInstance::A(size_t row, size_t col) const {
  assert(row < rows() && col < cols());
  if (row == 0) return 1;
  size_t offset = 0;
  for (size_t i = 0; i + 1 < row; ++i) offset += m[i];
  if (col < offset || col >= offset + static_cast<size_t>(m[row - 1])) return 0;
  return mpq_class(-static_cast<long>(col - offset + 1));  // -j
}

LPInstance lp_build(const std::vector<int>& m, const mpq_class& epsilon) {
  if (epsilon < 0) throw std::domain_error("lp_build: epsilon must be >= 0");
  for (int mi : m) {
    if (mi < 2) throw std::domain_error("lp_build: multiplicities must be >= 2");
  }
  LPInstance inst;
  inst.m = m;
  inst.epsilon = epsilon;
  for (int mi : m) {
    for (int j = 1; j <= mi; ++j) inst.c.emplace_back(mi - j, mi);
  }
  for (auto& q : inst.c) q.canonicalize();
  inst.b.push_back(mpq_class(static_cast<long>(m.size())) - 2 - epsilon);
  for (size_t i = 0; i < m.size(); ++i) inst.b.push_back(-1);
  for (auto& q : inst.b) q.canonicalize();
  return inst;
}

std::vector<mpq_class> canonical_dual_vector(const LPInstance& inst) {
  std::vector<mpq_class> x;
  x.emplace_back(1);
  for (int mi : inst.m) x.emplace_back(mpq_class(1, mi));
  return x;
}

DualCheck dual_feasible_check(const LPInstance& inst) {
  std::vector<mpq_class> x = canonical_dual_vector(inst);
  DualCheck out;
  out.feasible = true;
  out.tight = true;
  for (size_t col = 0; col < inst.cols(); ++col) {
    mpq_class atx = 0;
    for (size_t row = 0; row < inst.rows(); ++row) atx += inst.A(row, col) * x[row];
    atx.canonicalize();
    if (atx > inst.c[col]) out.feasible = false;
    if (atx != inst.c[col]) out.tight = false;
  }
  mpq_class btx = 0;
  for (size_t row = 0; row < inst.rows(); ++row) btx += inst.b[row] * x[row];
  btx.canonicalize();
  out.dual_value_coefficient = btx;
  return out;
}

PointLP point_exponent_vector(const StackyCurveP1& curve, const ProjPoint& t) {
  PointLP out;
  uint64_t mx = static_cast<uint64_t>(std::max(ll_abs(t.x), ll_abs(t.y)));
  LogCombo own_total;
  for (const auto& sp : curve.points()) {
    int m = sp.multiplicity;
    uint64_t lam = lambda(sp, t);
    PowerFreeDecomposition d = power_free_decompose(static_cast<long long>(lam), m);
    out.z.push_back(d.parts);
    for (uint64_t zj : d.parts) {
      out.y.push_back(LogCombo::log_of(zj));
      own_total += out.y.back();
    }
  }
  out.rhs.push_back(own_total);
  for (const auto& sp : curve.points()) {
    uint64_t K = static_cast<uint64_t>(ll_abs(sp.point.x) + ll_abs(sp.point.y)) * mx;
    LogCombo r;
    r.add(-1, K);
    out.rhs.push_back(r);
  }
  return out;
}

bool weak_duality_check(const LPInstance& inst, const PointLP& point,
                        const std::vector<mpq_class>& x) {
  if (point.y.size() != inst.cols() || point.rhs.size() != inst.rows() || x.size() != inst.rows())
    throw std::invalid_argument("weak_duality_check: dimension mismatch");
  // y >= 0 holds because every z_{i,j} >= 1. Primal feasibility A y >= rhs:
  for (size_t row = 0; row < inst.rows(); ++row) {
    LogCombo ay;
    for (size_t col = 0; col < inst.cols(); ++col) {
      mpq_class a = inst.A(row, col);
      if (a != 0) ay += point.y[col].scaled(a);
    }
    ay -= point.rhs[row];
    if (ay.sign() < 0) throw std::invalid_argument("weak_duality_check: primal vector infeasible");
  }
  // Dual feasibility: x >= 0 and A^T x <= c.
  for (const auto& xi : x) {
    if (xi < 0) throw std::invalid_argument("weak_duality_check: dual vector has negative entry");
  }
  for (size_t col = 0; col < inst.cols(); ++col) {
    mpq_class atx = 0;
    for (size_t row = 0; row < inst.rows(); ++row) atx += inst.A(row, col) * x[row];
    atx.canonicalize();
    if (atx > inst.c[col]) throw std::invalid_argument("weak_duality_check: dual vector infeasible");
  }
  LogCombo cy;
  for (size_t col = 0; col < inst.cols(); ++col) {
    if (inst.c[col] != 0) cy += point.y[col].scaled(inst.c[col]);
  }
  LogCombo bx;
  for (size_t row = 0; row < inst.rows(); ++row) {
    if (x[row] != 0) bx += point.rhs[row].scaled(x[row]);
  }
  return log_geq(cy, bx);
}

namespace {

struct Powerful {
  uint64_t q = 1, rad = 1, kappa = 1;
};

void powerful_rec(const std::vector<uint32_t>& primes, size_t idx, uint64_t q, uint64_t rad,
                  uint64_t limit, std::vector<Powerful>& out) {
  if (q > 1) out.push_back(Powerful{q, rad, q / rad});
  for (size_t i = idx; i < primes.size(); ++i) {
    uint64_t p = primes[i];
    if (q > limit / (p * p)) break;
    uint64_t v = q * p * p;
    while (true) {
      powerful_rec(primes, i + 1, v, rad * p, limit, out);
      if (v > limit / p) break;
      v *= p;
    }
  }
}

std::vector<Powerful> powerful_numbers(uint64_t limit) {
  std::vector<uint32_t> primes;
  for (uint32_t p : small_sieve().primes()) {
    if (uint64_t(p) * p > limit) break;
    primes.push_back(p);
  }
  std::vector<Powerful> out;
  powerful_rec(primes, 0, 1, 1, limit, out);
  std::sort(out.begin(), out.end(), [](const Powerful& a, const Powerful& b) { return a.q < b.q; });
  return out;
}

double triple_quality(uint64_t c, uint64_t rad) {
  return std::log(static_cast<double>(c)) / std::log(static_cast<double>(rad));
}

// Largest k with n = r^k; returns (r, k).
std::pair<uint64_t, int> max_power_split(uint64_t n) {
  assert(n >= 2);
  mpz_class z(static_cast<unsigned long>(n)), root;
  for (int k = 63; k >= 2; --k) {
    if (mpz_root(root.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(k)) != 0) {
      return {mpz_get_ui(root.get_mpz_t()), k};
    }
  }
  return {n, 1};
}

// sign of quality(c, r) - p/q via c^q <=> r^p.
int cmp_quality_to_fraction(uint64_t c, uint64_t r, unsigned long p, unsigned long q) {
  mpz_class lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(c), q);
  mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(r), p);
  return ::cmp(lhs, rhs) > 0 ? 1 : (::cmp(lhs, rhs) < 0 ? -1 : 0);
}

}  // namespace

int compare_quality(uint64_t c1, uint64_t r1, uint64_t c2, uint64_t r2) {
  assert(c1 >= 2 && r1 >= 2 && c2 >= 2 && r2 >= 2);
  long double q1 = std::log(static_cast<long double>(c1)) / std::log(static_cast<long double>(r1));
  long double q2 = std::log(static_cast<long double>(c2)) / std::log(static_cast<long double>(r2));
  if (std::abs(q1 - q2) > 1e-13L * std::max<long double>(q1, q2)) return q1 < q2 ? -1 : 1;

  // Exact path. quality is rational iff c and rad are powers of one base.
  auto [b1, e1] = max_power_split(c1);
  auto [f1, g1] = max_power_split(r1);
  auto [b2, e2] = max_power_split(c2);
  auto [f2, g2] = max_power_split(r2);
  bool rat1 = b1 == f1, rat2 = b2 == f2;
  if (rat1 && rat2) {
    mpq_class a(e1, g1), b(e2, g2);
    a.canonicalize();
    b.canonicalize();
    return ::cmp(a, b) > 0 ? 1 : (::cmp(a, b) < 0 ? -1 : 0);
  }
  if (rat1) return -cmp_quality_to_fraction(c2, r2, e1, g1);
  if (rat2) return cmp_quality_to_fraction(c1, r1, e2, g2);

  // Stern-Brocot walk looking for a separating rational.
  unsigned long pl = 0, ql = 1, pr = 1, qr = 0;
  for (int depth = 0; depth < 64; ++depth) {
    unsigned long pm = pl + pr, qm = ql + qr;
    if (pm > 100'000 || qm > 100'000) break;
    int s1 = cmp_quality_to_fraction(c1, r1, pm, qm);
    int s2 = cmp_quality_to_fraction(c2, r2, pm, qm);
    if (s1 == 0 || s2 == 0) return s1 != 0 ? s1 : -s2;
    if (s1 != s2) return s1;
    if (s1 > 0) {
      pl = pm;
      ql = qm;
    } else {
      pr = pm;
      qr = qm;
    }
  }
  return 0;  // undecided; callers fall back to a deterministic key
}

std::vector<AbcTriple> abc_scan(uint64_t N, const AbcScanOptions& opt) {
  if (N < 2) return {};
  std::vector<uint32_t> rad = radical_table(static_cast<uint32_t>(N));
  const uint64_t N1 = std::min<uint64_t>(opt.direct_limit, N);
  int nthreads = std::max(opt.threads, 1);

  auto keep = [&](uint64_t a, uint64_t b, uint64_t c, std::vector<AbcTriple>& out) {
    u128 r = u128(rad[a]) * rad[b] * rad[c];
    if (r >= c) return;  // only strict hits rank above quality 1
    if (std::gcd(a, b) != 1) return;
    uint64_t rr = static_cast<uint64_t>(r);
    double q = triple_quality(c, rr);
    if (q + 1e-12 < opt.min_quality) return;
    out.push_back(AbcTriple{a, b, c, rr, q});
  };

  std::vector<std::vector<AbcTriple>> found(nthreads);

  {  // direct window: c <= N1
    std::vector<std::thread> pool;
    auto worker = [&](int part) {
      for (uint64_t c = 3 + part; c <= N1; c += nthreads) {
        for (uint64_t a = 1; 2 * a < c; ++a) {
          keep(a, c - a, c, found[part]);
        }
      }
    };
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  if (N > N1) {
    // Tail: enumerate the powerful parts of b and c. Every hit with c > N1
    // has kappa(b) kappa(c) > b > c/2, rad(b) < kappa(c), rad(c) < 2 kappa(b).
    std::vector<Powerful> pw = powerful_numbers(N);
    std::vector<std::thread> pool;
    auto worker = [&](int part) {
      for (size_t ic = part; ic < pw.size(); ic += nthreads) {
        const Powerful& Qc = pw[ic];
        for (const Powerful& Qb : pw) {
          if (Qb.q > N) break;
          u128 kk = u128(Qb.kappa) * Qc.kappa;
          if (2 * kk <= N1) continue;
          uint64_t fc_cap = std::min<uint64_t>(N / Qc.q, (2 * Qb.kappa - 1) / Qc.rad);
          for (uint64_t fc = N1 / Qc.q + 1; fc <= fc_cap; ++fc) {
            if (rad[fc] != fc || std::gcd(fc, Qc.rad) != 1) continue;
            uint64_t c = Qc.q * fc;
            if (c <= N1) continue;
            if (2 * kk <= c) break;  // c grows with fc
            uint64_t fb_lo = c / (2 * Qb.q) + 1;
            uint64_t fb_hi = std::min((c - 1) / Qb.q, (Qc.kappa - 1) / Qb.rad);
            for (uint64_t fb = fb_lo; fb <= fb_hi; ++fb) {
              if (rad[fb] != fb || std::gcd(fb, Qb.rad) != 1) continue;
              uint64_t b = Qb.q * fb;
              keep(c - b, b, c, found[part]);
            }
          }
        }
      }
    };
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  std::vector<AbcTriple> all;
  for (auto& v : found) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end(), [](const AbcTriple& x, const AbcTriple& y) {
    int s = compare_quality(x.c, x.rad, y.c, y.rad);
    if (s != 0) return s > 0;
    if (x.c != y.c) return x.c < y.c;
    return x.a < y.a;
  });
  return all;
}

RadicalReport radical_inequality_report(const StackyCurveP1& curve, long long B,
                                        const mpq_class& eps, size_t max_rows) {
  std::vector<ProjPoint> expect = {make_point(0, 1), make_point(1, 0), make_point(-1, 1)};
  if (curve.size() != 3) throw std::domain_error("radical report: need the three standard points");
  for (const auto& sp : curve.points()) {
    if (std::find(expect.begin(), expect.end(), sp.point) == expect.end())
      throw std::domain_error("radical report: curve must be supported on {0, inf, -1}");
  }
  double eps_d = eps.get_d();
  RadicalReport rep;
  for_each_point(B, [&](const ProjPoint& t) {
    if (t.x == 0 || t.y == 0 || t.x + t.y == 0) return;
    ++rep.points;
    u128 dual = 1;
    for (const auto& sp : curve.points()) {
      dual *= rad_m(lambda(sp, t), sp.multiplicity);
    }
    u128 r128 = u128(radical(t.x)) * radical(t.y) * radical(t.x + t.y);
    if (r128 > UINT64_MAX || dual > UINT64_MAX)
      throw std::overflow_error("radical report values exceed 64 bits; shrink B");
    uint64_t r = static_cast<uint64_t>(r128);
    if (dual > r) ++rep.violations;
    double ratio = static_cast<double>(static_cast<uint64_t>(dual)) / static_cast<double>(r);
    rep.max_dual_over_rad = std::max(rep.max_dual_over_rad, ratio);
    double mx = static_cast<double>(std::max(ll_abs(t.x), ll_abs(t.y)));
    rep.max_weil_over_radpow =
        std::max(rep.max_weil_over_radpow, mx / std::pow(static_cast<double>(r), 1.0 + eps_d));
    if (rep.sample_rows.size() < max_rows) {
      rep.sample_rows.push_back(RadicalReportRow{t, static_cast<uint64_t>(mx),
                                                 mpz_class(static_cast<unsigned long>(static_cast<uint64_t>(dual))), r});
    }
  });
  return rep;
}

std::vector<NorthcottRow> northcott_gamma_probe(const StackyCurveP1& curve,
                                                const std::vector<mpq_class>& deltas, uint64_t C,
                                                const std::vector<long long>& Bs) {
  std::vector<NorthcottRow> rows;
  for (const auto& delta : deltas) {
    uint64_t stable_count = 0;
    bool have_stable = false;
    for (long long B : Bs) {
      uint64_t count = 0;
      long long Lp = std::lcm(curve.lcm(), mpz_get_si(delta.get_den().get_mpz_t()));
      mpz_class cap;
      mpz_ui_pow_ui(cap.get_mpz_t(), static_cast<unsigned long>(C), static_cast<unsigned long>(Lp));
      mpq_class bound(cap);
      for_each_point(B, [&](const ProjPoint& t) {
        for (const auto& sp : curve.points()) {
          if (sp.point == t) return;
        }
        ExactHeight h = perturbed_height(curve, t, delta);
        assert(h.lcm_power == Lp);
        if (h.value <= bound) ++count;
      });
      bool exhaustive = false;
      if (delta > 0) {
        // H >= max^delta, so max <= C^{1/delta}.
        mpq_class inv = 1 / delta;
        mpz_class num_pow, breq;
        mpz_ui_pow_ui(num_pow.get_mpz_t(), static_cast<unsigned long>(C),
                      static_cast<unsigned long>(mpz_get_ui(inv.get_num().get_mpz_t())));
        mpz_root(breq.get_mpz_t(), num_pow.get_mpz_t(),
                 static_cast<unsigned long>(mpz_get_ui(inv.get_den().get_mpz_t())));
        exhaustive = mpz_cmp_si(breq.get_mpz_t(), B) <= 0;
      }
      if (exhaustive) {
        if (have_stable && count != stable_count)
          throw std::logic_error("northcott probe: exhaustive counts disagree");
        stable_count = count;
        have_stable = true;
      }
      rows.push_back(NorthcottRow{delta, B, count, exhaustive});
    }
  }
  return rows;
}

}  // namespace stacky
