#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "stacky/arith.hpp"

namespace stacky {

// Point of P^1(Q) in canonical coprime coordinates: y > 0, or y = 0 and x = 1.
struct ProjPoint {
  long long x = 0;
  long long y = 1;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

ProjPoint make_point(long long x, long long y);  // normalizes; throws on [0:0]

struct StackyPoint {
  ProjPoint point;
  int multiplicity = 2;  // > 1
};

// Stacky curve with coarse space P^1 over Q: distinct marked points with
// multiplicities. The empty curve is the coarse space itself.
class StackyCurveP1 {
 public:
  StackyCurveP1() = default;
  explicit StackyCurveP1(std::vector<StackyPoint> points);

  const std::vector<StackyPoint>& points() const { return points_; }
  size_t size() const { return points_.size(); }
  long long lcm() const { return lcm_; }
  mpq_class euler_char() const;

 private:
  std::vector<StackyPoint> points_;
  long long lcm_ = 1;
};

// pi^* O(d) tensor prod L_{P_i}^{d_i} with 0 <= d_i < m_i.
struct LineBundle {
  long long coarse_degree = 0;
  std::vector<int> stacky_exponents;

  mpq_class total_degree(const StackyCurveP1& curve) const;
};

LineBundle trivial_bundle(const StackyCurveP1& curve);
LineBundle anticanonical_bundle(const StackyCurveP1& curve);  // degree = chi
LineBundle canonical_bundle(const StackyCurveP1& curve);      // degree = -chi

// Exact height stored as H^L with L a common power clearing all m_i-th roots.
struct ExactHeight {
  long long lcm_power = 1;  // L
  mpq_class value;          // H^L, exact

  double approx() const;  // H itself, for display only
};

// Heights of the same (curve, bundle) pair share lcm_power; comparing across
// different L values is a bug.
int cmp(const ExactHeight& a, const ExactHeight& b);

// lambda(P, t) = |alpha*t.y - beta*t.x| for P = [alpha:beta].
// Throws std::domain_error when t = P.
uint64_t lambda(const StackyPoint& P, const ProjPoint& t);

mpq_class euler_char(const StackyCurveP1& curve);

ExactHeight stacky_part(const StackyCurveP1& curve, const LineBundle& bundle, const ProjPoint& t);
ExactHeight height(const StackyCurveP1& curve, const LineBundle& bundle, const ProjPoint& t);
ExactHeight anticanonical_height(const StackyCurveP1& curve, const ProjPoint& t);
ExactHeight canonical_height(const StackyCurveP1& curve, const ProjPoint& t);

// (prod phi_{m_i}(l_i)^{1/m_i} * max^delta)^{L'} with L' = lcm(L, den(delta)).
ExactHeight perturbed_height(const StackyCurveP1& curve, const ProjPoint& t, const mpq_class& delta);

// prod rad_{m_i}(lambda_i^{d_i}); equals H_L * H_{L^-1} exactly.
mpz_class dual_product(const StackyCurveP1& curve, const LineBundle& bundle, const ProjPoint& t);

// Height of bundle^{tensor n}, any nonzero n (phi route of the duality
// theorem). tensor_power_height_rform is the r_m route for negative powers:
// it evaluates bundle^{tensor -k} for k > 0.
ExactHeight tensor_power_height(const StackyCurveP1& curve, const LineBundle& bundle, long long n,
                                const ProjPoint& t);
ExactHeight tensor_power_height_rform(const StackyCurveP1& curve, const LineBundle& bundle, long long k,
                                      const ProjPoint& t);

struct Mat2 {
  long long a = 1, b = 0, c = 0, d = 1;

  long long det() const;
  Mat2 primitive() const;  // divide out the content
  Mat2 adjugate() const;
};

ProjPoint transform_point(const Mat2& M, const ProjPoint& t);  // throws on det = 0
StackyCurveP1 mobius_transform(const StackyCurveP1& curve, const Mat2& M);

// Keep only the listed stacky points (indices into points(), deduplicated).
StackyCurveP1 canonical_cover_reduce(const StackyCurveP1& curve, const std::vector<size_t>& keep);

}  // namespace stacky
