#include "stacky/format.hpp"

#include <sstream>
#include <stdexcept>

namespace stacky {

namespace {

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, delim)) out.push_back(item);
  if (!s.empty() && s.back() == delim) out.push_back("");
  return out;
}

[[noreturn]] void bad(const std::string& what, const std::string& s) {
  throw std::invalid_argument(what + ": '" + s + "'");
}

mpz_class parse_mpz(const std::string& s) {
  if (s.empty()) bad("empty integer", s);
  size_t caret = s.find('^');
  if (caret != std::string::npos) {
    mpz_class base = parse_mpz(s.substr(0, caret));
    mpz_class exp = parse_mpz(s.substr(caret + 1));
    if (exp < 0 || !exp.fits_ulong_p()) bad("bad exponent", s);
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
    return out;
  }
  try {
    return mpz_class(s);
  } catch (const std::invalid_argument&) {
    bad("bad integer", s);
  }
}

}  // namespace

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) bad("empty rational", s);
  size_t slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class num = parse_mpz(s.substr(0, slash));
    mpz_class den = parse_mpz(s.substr(slash + 1));
    if (den == 0) bad("zero denominator", s);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  size_t dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
    if (tail.empty()) bad("bad decimal", s);
    bool neg = !head.empty() && head[0] == '-';
    mpz_class ipart = parse_mpz(head.empty() || head == "-" ? "0" : head);
    mpz_class fpart = parse_mpz(tail);
    if (fpart < 0) bad("bad decimal", s);
    mpz_class den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    mpz_class num = ipart * den;
    if (ipart < 0 || neg) {
      num -= fpart;
    } else {
      num += fpart;
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  return mpq_class(parse_mpz(s));
}

long long parse_integer(const std::string& s) {
  mpz_class z = parse_mpz(s);
  if (!z.fits_slong_p()) bad("integer out of range", s);
  return mpz_get_si(z.get_mpz_t());
}

uint64_t parse_unsigned(const std::string& s) {
  mpz_class z = parse_mpz(s);
  if (z < 0 || !z.fits_ulong_p()) bad("expected a nonnegative integer", s);
  return mpz_get_ui(z.get_mpz_t());
}

ProjPoint parse_point(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "oo") return make_point(1, 0);
  mpq_class q = parse_rational(s);
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) bad("point out of range", s);
  return make_point(mpz_get_si(q.get_num().get_mpz_t()), mpz_get_si(q.get_den().get_mpz_t()));
}

StackyCurveP1 parse_curve(const std::string& s) {
  std::vector<StackyPoint> pts;
  for (const std::string& item : split(s, ',')) {
    size_t colon = item.rfind(':');
    if (colon == std::string::npos) bad("curve item needs point:multiplicity", item);
    ProjPoint p = parse_point(item.substr(0, colon));
    long long m = parse_integer(item.substr(colon + 1));
    if (m < 2 || m > 1'000'000) bad("multiplicity out of range", item);
    pts.push_back(StackyPoint{p, static_cast<int>(m)});
  }
  if (pts.empty()) bad("empty curve spec", s);
  return StackyCurveP1(std::move(pts));
}

LineBundle parse_bundle(const std::string& s, const StackyCurveP1& curve) {
  size_t semi = s.find(';');
  if (semi == std::string::npos) bad("bundle needs d;d_1,...,d_r", s);
  LineBundle b;
  b.coarse_degree = parse_integer(s.substr(0, semi));
  std::string rest = s.substr(semi + 1);
  if (!rest.empty()) {
    for (const std::string& item : split(rest, ',')) {
      long long d = parse_integer(item);
      if (d < 0 || d > INT32_MAX) bad("stacky exponent out of range", item);
      b.stacky_exponents.push_back(static_cast<int>(d));
    }
  }
  if (b.stacky_exponents.size() != curve.size()) bad("bundle exponent count mismatch", s);
  for (size_t i = 0; i < curve.size(); ++i) {
    if (b.stacky_exponents[i] >= curve.points()[i].multiplicity) bad("stacky exponent >= m_i", s);
  }
  return b;
}

std::vector<uint64_t> parse_ladder(const std::string& s) {
  size_t dots = s.find("..");
  std::vector<uint64_t> out;
  if (dots != std::string::npos) {
    uint64_t lo = parse_unsigned(s.substr(0, dots));
    uint64_t hi = parse_unsigned(s.substr(dots + 2));
    if (lo < 1 || hi < lo) bad("bad ladder range", s);
    for (uint64_t t = lo; t <= hi; t *= 2) {
      out.push_back(t);
      if (t > hi / 2) break;
    }
    return out;
  }
  for (const std::string& item : split(s, ',')) {
    if (!item.empty()) out.push_back(parse_unsigned(item));
  }
  return out;
}

std::vector<mpq_class> parse_rational_list(const std::string& s) {
  std::vector<mpq_class> out;
  for (const std::string& item : split(s, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

std::string rational_str(const mpq_class& q) {
  std::ostringstream out;
  out << q;
  return out.str();
}

std::string point_str(const ProjPoint& t) {
  if (t.y == 0) return "inf";
  std::ostringstream out;
  out << t.x;
  if (t.y != 1) out << "/" << t.y;
  return out.str();
}

std::string curve_str(const StackyCurveP1& curve) {
  std::ostringstream out;
  for (size_t i = 0; i < curve.size(); ++i) {
    if (i) out << ",";
    out << point_str(curve.points()[i].point) << ":" << curve.points()[i].multiplicity;
  }
  return out.str();
}

}  // namespace stacky
