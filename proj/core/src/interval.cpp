#include "aitherm/interval.hpp"

#include <algorithm>
#include <utility>

namespace aitherm {

std::string Interval::to_display_string() const {
  if (is_exact()) return lo_.to_decimal_string() + " (exact)";
  const Dyadic mid = midpoint();
  const Dyadic rad = hi_ - mid;  // >= width/2, sound with the printed rounding below
  // Print the midpoint to enough digits that the print error is dominated by
  // the padded radius.
  std::string m = mid.to_decimal_string();
  constexpr std::size_t kMaxDigits = 20;
  const std::size_t dot = m.find('.');
  std::string shown = m;
  Dyadic pad = rad;
  if (dot != std::string::npos && m.size() - dot - 1 > kMaxDigits) {
    shown = m.substr(0, dot + 1 + kMaxDigits);
    // truncation error < 10^-20 < 2^-66
    pad = rad + Dyadic::power_of_two(-66);
  }
  return shown + " +/- " + pad.to_upper_science_string();
}

Dyadic div_floor(const Dyadic& x, const Dyadic& y, std::int64_t bits) {
  if (y.is_zero()) throw DivisionByZeroInterval();
  // floor(x/y * 2^bits) / 2^bits with exact integer arithmetic.
  BigInt num = x.mantissa();
  BigInt den = y.mantissa();
  std::int64_t e = x.exponent() - y.exponent() + bits;
  if (e >= 0) {
    num <<= static_cast<unsigned>(e);
  } else {
    den <<= static_cast<unsigned>(-e);
  }
  return Dyadic(floor_div(num, den), -bits);
}

Dyadic div_ceil(const Dyadic& x, const Dyadic& y, std::int64_t bits) {
  return -div_floor(-x, y, bits);
}

Interval ineg(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval iadd(const Interval& a, const Interval& b, std::int64_t bits) {
  return Interval((a.lo() + b.lo()).floor_to(bits), (a.hi() + b.hi()).ceil_to(bits));
}

Interval isub(const Interval& a, const Interval& b, std::int64_t bits) {
  return iadd(a, ineg(b), bits);
}

Interval imul(const Interval& a, const Interval& b, std::int64_t bits) {
  const Dyadic p1 = a.lo() * b.lo();
  const Dyadic p2 = a.lo() * b.hi();
  const Dyadic p3 = a.hi() * b.lo();
  const Dyadic p4 = a.hi() * b.hi();
  const Dyadic lo = std::min(std::min(p1, p2), std::min(p3, p4));
  const Dyadic hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return Interval(lo.floor_to(bits), hi.ceil_to(bits));
}

Interval idiv(const Interval& a, const Interval& b, std::int64_t bits) {
  if (b.contains_zero()) throw DivisionByZeroInterval();
  const Dyadic q1d = div_floor(a.lo(), b.lo(), bits), q1u = div_ceil(a.lo(), b.lo(), bits);
  const Dyadic q2d = div_floor(a.lo(), b.hi(), bits), q2u = div_ceil(a.lo(), b.hi(), bits);
  const Dyadic q3d = div_floor(a.hi(), b.lo(), bits), q3u = div_ceil(a.hi(), b.lo(), bits);
  const Dyadic q4d = div_floor(a.hi(), b.hi(), bits), q4u = div_ceil(a.hi(), b.hi(), bits);
  const Dyadic lo = std::min(std::min(q1d, q2d), std::min(q3d, q4d));
  const Dyadic hi = std::max(std::max(q1u, q2u), std::max(q3u, q4u));
  return Interval(lo, hi);
}

Interval iscale(const Interval& a, const BigRational& q, std::int64_t bits) {
  const BigInt num = numerator(q);
  const BigInt den = denominator(q);  // > 0 in canonical form
  Dyadic p1(a.lo().mantissa() * num, a.lo().exponent());
  Dyadic p2(a.hi().mantissa() * num, a.hi().exponent());
  if (p2 < p1) std::swap(p1, p2);
  if (den == 1) return Interval(p1.floor_to(bits), p2.ceil_to(bits));
  const Dyadic d(den, 0);
  return Interval(div_floor(p1, d, bits), div_ceil(p2, d, bits));
}

Interval ipow_nonneg(const Interval& a, std::uint64_t n, std::int64_t bits) {
  if (a.lo().sign() < 0) throw Error("ipow_nonneg: negative base");
  Interval result = Interval::exact(Dyadic(1));
  Interval base = a;
  while (n > 0) {
    if (n & 1) result = imul(result, base, bits);
    n >>= 1;
    if (n > 0) base = imul(base, base, bits);
  }
  return result;
}

Interval field_ops(const Interval& a, const Interval& b, FieldOp op, const Precision& eps) {
  const std::int64_t bits = eps.working_bits();
  switch (op) {
    case FieldOp::add: return iadd(a, b, bits);
    case FieldOp::sub: return isub(a, b, bits);
    case FieldOp::mul: return imul(a, b, bits);
    case FieldOp::div: return idiv(a, b, bits);
  }
  throw Error("field_ops: bad op");
}

}  // namespace aitherm
