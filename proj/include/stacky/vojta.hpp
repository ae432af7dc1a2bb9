#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "stacky/curve.hpp"

namespace stacky {

// Exact linear combination sum q_i * log(n_i) over positive integers n_i.
// Signs and comparisons are decided by cross-multiplied integer powers.
class LogCombo {
 public:
  LogCombo() = default;

  static LogCombo log_of(uint64_t n);  // n >= 1

  LogCombo& add(const mpq_class& coeff, uint64_t n);
  LogCombo& operator+=(const LogCombo& o);
  LogCombo& operator-=(const LogCombo& o);
  LogCombo scaled(const mpq_class& s) const;

  int sign() const;  // exact sign of the value
  double approx() const;
  bool zero() const { return terms_.empty(); }

 private:
  std::map<uint64_t, mpq_class> terms_;  // n -> coefficient, n >= 2
};

bool log_geq(const LogCombo& a, const LogCombo& b);

// The section-5 linear program in logB units:
//   minimize c^T y  s.t.  A y >= b, y >= 0,
// columns y_{i,j} (j = 1..m_i per block), rows a_0 = all ones and
// a_i = -j on block i; b_0 = n-2-eps, b_i = -1.
struct LPInstance {
  std::vector<int> m;
  mpq_class epsilon;
  std::vector<mpq_class> c;  // c_{i,j} = (m_i - j)/m_i, c_{i,m_i} = 0
  std::vector<mpq_class> b;  // logB coefficients

  size_t cols() const { return c.size(); }
  size_t rows() const { return m.size() + 1; }
  mpq_class A(size_t row, size_t col) const;
};

LPInstance lp_build(const std::vector<int>& m, const mpq_class& epsilon);

std::vector<mpq_class> canonical_dual_vector(const LPInstance& inst);  // [1, 1/m_1, ..., 1/m_n]

struct DualCheck {
  bool feasible = false;
  bool tight = false;                 // A^T x = c exactly
  mpq_class dual_value_coefficient;   // b^T x in logB units; = -chi - eps
};

DualCheck dual_feasible_check(const LPInstance& inst);

// Primal data of one rational point: z_{i,j} from the m_i-power-free
// decomposition of lambda_i, plus the exact per-point right-hand side
// (own total for row 0, -log((|alpha_i|+|beta_i|) max) for row i).
struct PointLP {
  std::vector<std::vector<uint64_t>> z;  // z[i][j-1]
  std::vector<LogCombo> y;               // per column
  std::vector<LogCombo> rhs;             // per row
};

PointLP point_exponent_vector(const StackyCurveP1& curve, const ProjPoint& t);

// Verifies y >= 0, A y >= rhs, x >= 0, A^T x <= c exactly (throws
// std::invalid_argument otherwise), then returns c^T y >= rhs^T x.
bool weak_duality_check(const LPInstance& inst, const PointLP& point,
                        const std::vector<mpq_class>& x);

struct AbcTriple {
  uint64_t a = 0, b = 0, c = 0;
  uint64_t rad = 0;       // rad(abc)
  double quality = 0.0;   // log c / log rad
};

struct AbcScanOptions {
  uint64_t direct_limit = 100'000;  // full pair loop for c <= this
  double min_quality = 1.0;         // report hits with quality >= this (and > 1)
  int threads = 1;
};

// All abc hits (coprime a + b = c <= N with rad(abc) < c) at or above the
// quality floor, ranked by quality. Complete for quality > 1: any hit with
// c beyond the direct window forces kappa(b) kappa(c) > b > c/2 where
// kappa(n) = n / rad(n), so enumerating the powerful parts of b and c covers
// the tail.
std::vector<AbcTriple> abc_scan(uint64_t N, const AbcScanOptions& opt = {});

// Exact quality order: -1/0/+1 as quality(c1, r1) <=> quality(c2, r2).
int compare_quality(uint64_t c1, uint64_t r1, uint64_t c2, uint64_t r2);

struct RadicalReportRow {
  ProjPoint t;
  uint64_t max = 0;
  mpz_class dual_product;  // H_K * H_{-K} = prod rad_{m_i}(lambda_i)
  uint64_t rad = 0;        // rad(x y (x+y))
};

struct RadicalReport {
  uint64_t points = 0;
  uint64_t violations = 0;         // dual_product > rad (must stay 0)
  double max_dual_over_rad = 0.0;  // exact direction, <= 1
  double max_weil_over_radpow = 0.0;  // sup max/rad^{1+eps}, observational
  std::vector<RadicalReportRow> sample_rows;
};

// Curve must be supported on {0, inf, -1} so that rad(x y (x+y)) is the
// right-hand side. Asserts the exact inequality for every point.
RadicalReport radical_inequality_report(const StackyCurveP1& curve, long long B,
                                        const mpq_class& eps, size_t max_rows = 64);

struct NorthcottRow {
  mpq_class delta;
  long long B = 0;
  uint64_t count = 0;
  bool exhaustive = false;
};

// Counts of points with perturbed height <= C for each (delta, B). For
// delta > 0 the rows with B >= C^{1/delta} are exhaustive and must agree;
// that stabilization is verified here.
std::vector<NorthcottRow> northcott_gamma_probe(const StackyCurveP1& curve,
                                                const std::vector<mpq_class>& deltas, uint64_t C,
                                                const std::vector<long long>& Bs);

}  // namespace stacky
