#include "stacky/curve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace stacky {

namespace {

long long ll_abs(long long v) { return v < 0 ? -v : v; }

// gmpxx has no long long overloads; this box is LP64.
mpz_class z_ll(long long v) { return mpz_class(static_cast<long>(v)); }
mpq_class q_ll(long long v) { return mpq_class(static_cast<long>(v)); }

// value *= base^exp with exp of either sign, exact.
void mul_pow(mpq_class& value, const mpz_class& base, long long exp) {
  if (exp == 0) return;
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp < 0 ? -exp : exp));
  if (exp > 0) {
    value *= pw;
  } else {
    value /= pw;
  }
  value.canonicalize();
}

long long weil_exponent(const StackyCurveP1& curve, const LineBundle& bundle) {
  long long L = curve.lcm();
  long long e = L * bundle.coarse_degree;
  for (size_t i = 0; i < curve.size(); ++i) {
    e += bundle.stacky_exponents[i] * (L / curve.points()[i].multiplicity);
  }
  return e;  // = L * deg(bundle)
}

void check_bundle(const StackyCurveP1& curve, const LineBundle& bundle) {
  if (bundle.stacky_exponents.size() != curve.size())
    throw std::domain_error("bundle/curve stacky point count mismatch");
  for (size_t i = 0; i < curve.size(); ++i) {
    int d = bundle.stacky_exponents[i];
    if (d < 0 || d >= curve.points()[i].multiplicity)
      throw std::domain_error("stacky exponent out of range [0, m_i)");
  }
}

}  // namespace

ProjPoint make_point(long long x, long long y) {
  if (x == 0 && y == 0) throw std::domain_error("[0:0] is not a point of P^1");
  long long g = std::gcd(ll_abs(x), ll_abs(y));
  x /= g;
  y /= g;
  if (y < 0 || (y == 0 && x < 0)) {
    x = -x;
    y = -y;
  }
  return ProjPoint{x, y};
}

StackyCurveP1::StackyCurveP1(std::vector<StackyPoint> points) : points_(std::move(points)) {
  std::set<std::pair<long long, long long>> seen;
  for (auto& sp : points_) {
    sp.point = make_point(sp.point.x, sp.point.y);
    if (sp.multiplicity < 2) throw std::domain_error("stacky multiplicity must be >= 2");
    if (!seen.insert({sp.point.x, sp.point.y}).second)
      throw std::domain_error("stacky points must be pairwise distinct");
    lcm_ = std::lcm(lcm_, static_cast<long long>(sp.multiplicity));
  }
}

mpq_class StackyCurveP1::euler_char() const {
  mpq_class chi = 2;
  for (const auto& sp : points_) {
    chi -= mpq_class(sp.multiplicity - 1, sp.multiplicity);
  }
  chi.canonicalize();
  return chi;
}

mpq_class euler_char(const StackyCurveP1& curve) { return curve.euler_char(); }

mpq_class LineBundle::total_degree(const StackyCurveP1& curve) const {
  mpq_class deg(static_cast<long>(coarse_degree));
  for (size_t i = 0; i < curve.size(); ++i) {
    deg += mpq_class(stacky_exponents[i], curve.points()[i].multiplicity);
  }
  deg.canonicalize();
  return deg;
}

LineBundle trivial_bundle(const StackyCurveP1& curve) {
  return LineBundle{0, std::vector<int>(curve.size(), 0)};
}

LineBundle anticanonical_bundle(const StackyCurveP1& curve) {
  return LineBundle{2 - static_cast<long long>(curve.size()), std::vector<int>(curve.size(), 1)};
}

LineBundle canonical_bundle(const StackyCurveP1& curve) {
  LineBundle b{-2, {}};
  for (const auto& sp : curve.points()) b.stacky_exponents.push_back(sp.multiplicity - 1);
  return b;
}

double ExactHeight::approx() const {
  return std::pow(value.get_d(), 1.0 / static_cast<double>(lcm_power));
}

int cmp(const ExactHeight& a, const ExactHeight& b) {
  if (a.lcm_power != b.lcm_power)
    throw std::domain_error("comparing heights with different normalizing powers");
  return ::cmp(a.value, b.value);
}

uint64_t lambda(const StackyPoint& P, const ProjPoint& t) {
  __int128 v = static_cast<__int128>(P.point.x) * t.y - static_cast<__int128>(P.point.y) * t.x;
  if (v == 0) throw std::domain_error("height undefined at a stacky point");
  if (v < 0) v = -v;
  if (v > static_cast<__int128>(UINT64_MAX)) throw std::overflow_error("lambda exceeds 64 bits");
  return static_cast<uint64_t>(v);
}

ExactHeight stacky_part(const StackyCurveP1& curve, const LineBundle& bundle, const ProjPoint& t) {
  check_bundle(curve, bundle);
  long long L = curve.lcm();
  mpz_class v = 1;
  for (size_t i = 0; i < curve.size(); ++i) {
    int m = curve.points()[i].multiplicity;
    v *= stacky_local_factor(lambda(curve.points()[i], t), bundle.stacky_exponents[i], m, L / m,
                             SizeKind::kPhi);
  }
  return ExactHeight{L, mpq_class(v)};
}

ExactHeight height(const StackyCurveP1& curve, const LineBundle& bundle, const ProjPoint& t) {
  ExactHeight h = stacky_part(curve, bundle, t);
  mpz_class mx = z_ll(std::max(ll_abs(t.x), ll_abs(t.y)));
  mul_pow(h.value, mx, weil_exponent(curve, bundle));
  return h;
}

ExactHeight anticanonical_height(const StackyCurveP1& curve, const ProjPoint& t) {
  return height(curve, anticanonical_bundle(curve), t);
}

ExactHeight canonical_height(const StackyCurveP1& curve, const ProjPoint& t) {
  // max^{-L*chi} * prod r_{m_i}(lambda_i)^{L/m_i}
  long long L = curve.lcm();
  mpz_class v = 1;
  for (const auto& sp : curve.points()) {
    int m = sp.multiplicity;
    v *= stacky_local_factor(lambda(sp, t), 1, m, L / m, SizeKind::kRm);
  }
  ExactHeight h{L, mpq_class(v)};
  mpq_class chi = curve.euler_char();
  mpq_class Lchi = chi * q_ll(L);
  assert(Lchi.get_den() == 1);
  mpz_class mx = z_ll(std::max(ll_abs(t.x), ll_abs(t.y)));
  mul_pow(h.value, mx, -mpz_get_si(Lchi.get_num().get_mpz_t()));
  return h;
}

ExactHeight perturbed_height(const StackyCurveP1& curve, const ProjPoint& t, const mpq_class& delta) {
  long long L = curve.lcm();
  long long Lp = std::lcm(L, mpz_get_si(delta.get_den().get_mpz_t()));
  mpz_class v = 1;
  for (const auto& sp : curve.points()) {
    int m = sp.multiplicity;
    v *= stacky_local_factor(lambda(sp, t), 1, m, Lp / m, SizeKind::kPhi);
  }
  ExactHeight h{Lp, mpq_class(v)};
  mpq_class e = delta * q_ll(Lp);
  assert(e.get_den() == 1);
  mpz_class mx = z_ll(std::max(ll_abs(t.x), ll_abs(t.y)));
  mul_pow(h.value, mx, mpz_get_si(e.get_num().get_mpz_t()));
  return h;
}

mpz_class dual_product(const StackyCurveP1& curve, const LineBundle& bundle, const ProjPoint& t) {
  check_bundle(curve, bundle);
  mpz_class v = 1;
  for (size_t i = 0; i < curve.size(); ++i) {
    const auto& sp = curve.points()[i];
    v *= stacky_local_factor(lambda(sp, t), bundle.stacky_exponents[i], sp.multiplicity, 1,
                             SizeKind::kRadm);
  }
  return v;
}

ExactHeight tensor_power_height(const StackyCurveP1& curve, const LineBundle& bundle, long long n,
                                const ProjPoint& t) {
  check_bundle(curve, bundle);
  if (n == 0) throw std::domain_error("tensor power must be nonzero");
  long long L = curve.lcm();
  mpz_class v = 1;
  for (size_t i = 0; i < curve.size(); ++i) {
    const auto& sp = curve.points()[i];
    int m = sp.multiplicity;
    long long e = ((n % m) * bundle.stacky_exponents[i] % m + m) % m;
    v *= stacky_local_factor(lambda(sp, t), e, m, L / m, SizeKind::kPhi);
  }
  ExactHeight h{L, mpq_class(v)};
  mpz_class mx = z_ll(std::max(ll_abs(t.x), ll_abs(t.y)));
  mul_pow(h.value, mx, n * weil_exponent(curve, bundle));
  return h;
}

ExactHeight tensor_power_height_rform(const StackyCurveP1& curve, const LineBundle& bundle, long long k,
                                      const ProjPoint& t) {
  check_bundle(curve, bundle);
  if (k <= 0) throw std::domain_error("r_m route expects a positive k (for bundle^{-k})");
  long long L = curve.lcm();
  mpz_class v = 1;
  for (size_t i = 0; i < curve.size(); ++i) {
    const auto& sp = curve.points()[i];
    int m = sp.multiplicity;
    long long e = ((k % m) * bundle.stacky_exponents[i]) % m;
    v *= stacky_local_factor(lambda(sp, t), e, m, L / m, SizeKind::kRm);
  }
  ExactHeight h{L, mpq_class(v)};
  mpz_class mx = z_ll(std::max(ll_abs(t.x), ll_abs(t.y)));
  mul_pow(h.value, mx, -k * weil_exponent(curve, bundle));
  return h;
}

long long Mat2::det() const {
  __int128 v = static_cast<__int128>(a) * d - static_cast<__int128>(b) * c;
  if (v < -static_cast<__int128>(INT64_MAX) || v > static_cast<__int128>(INT64_MAX))
    throw std::overflow_error("matrix determinant exceeds 64 bits");
  return static_cast<long long>(v);
}

Mat2 Mat2::primitive() const {
  long long g = std::gcd(std::gcd(ll_abs(a), ll_abs(b)), std::gcd(ll_abs(c), ll_abs(d)));
  if (g <= 1) return *this;
  return Mat2{a / g, b / g, c / g, d / g};
}

Mat2 Mat2::adjugate() const { return Mat2{d, -b, -c, a}; }

ProjPoint transform_point(const Mat2& M, const ProjPoint& t) {
  if (M.det() == 0) throw std::domain_error("singular matrix does not act on P^1");
  __int128 nx = static_cast<__int128>(M.a) * t.x + static_cast<__int128>(M.b) * t.y;
  __int128 ny = static_cast<__int128>(M.c) * t.x + static_cast<__int128>(M.d) * t.y;
  if (nx < -static_cast<__int128>(INT64_MAX) || nx > static_cast<__int128>(INT64_MAX) ||
      ny < -static_cast<__int128>(INT64_MAX) || ny > static_cast<__int128>(INT64_MAX))
    throw std::overflow_error("transformed point exceeds 64 bits");
  return make_point(static_cast<long long>(nx), static_cast<long long>(ny));
}

StackyCurveP1 mobius_transform(const StackyCurveP1& curve, const Mat2& M) {
  if (M.det() == 0) throw std::domain_error("singular matrix does not act on P^1");
  std::vector<StackyPoint> pts;
  pts.reserve(curve.size());
  for (const auto& sp : curve.points()) {
    pts.push_back(StackyPoint{transform_point(M, sp.point), sp.multiplicity});
  }
  return StackyCurveP1(std::move(pts));
}

StackyCurveP1 canonical_cover_reduce(const StackyCurveP1& curve, const std::vector<size_t>& keep) {
  std::set<size_t> idx(keep.begin(), keep.end());
  std::vector<StackyPoint> pts;
  for (size_t i : idx) {
    if (i >= curve.size()) throw std::domain_error("canonical_cover_reduce: index out of range");
    pts.push_back(curve.points()[i]);
  }
  return StackyCurveP1(std::move(pts));
}

}  // namespace stacky
