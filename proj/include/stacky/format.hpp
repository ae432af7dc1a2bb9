#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "stacky/curve.hpp"

namespace stacky {

// Numeric parameters arrive as integer, p/q, finite decimal, or 2^k text.
// All parsers throw std::invalid_argument on malformed input.
mpq_class parse_rational(const std::string& s);
long long parse_integer(const std::string& s);
uint64_t parse_unsigned(const std::string& s);

// "3/4" -> [3:4], "inf" -> [1:0], "-2" -> [-2:1].
ProjPoint parse_point(const std::string& s);

// Comma-separated "alpha/beta:m" items, e.g. "0:2,inf:2,-1:2".
StackyCurveP1 parse_curve(const std::string& s);

// "d;d_1,...,d_r" against a parsed curve.
LineBundle parse_bundle(const std::string& s, const StackyCurveP1& curve);

// "2^8..2^14" (dyadic), "a,b,c", or a single value.
std::vector<uint64_t> parse_ladder(const std::string& s);
std::vector<mpq_class> parse_rational_list(const std::string& s);

std::string rational_str(const mpq_class& q);
std::string point_str(const ProjPoint& t);
std::string curve_str(const StackyCurveP1& curve);

}  // namespace stacky
