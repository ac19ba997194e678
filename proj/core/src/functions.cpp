#include "aitherm/functions.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>

#include "aitherm/errors.hpp"

namespace aitherm {

namespace mp = boost::multiprecision;

namespace {

// mid^b vs 2^target for mid = m*2^-k with odd m >= 3: m^b vs 2^(target+kb),
// decided by the leading-bit position alone since m^b is odd and therefore
// never equals a power of two.
int compare_pow_with_power_of_two(const BigInt& m, std::uint64_t b, std::int64_t target_exp) {
  const BigInt t = pow(m, static_cast<unsigned>(b));
  const auto lead = static_cast<std::int64_t>(mp::msb(t));
  return lead < target_exp ? -1 : 1;
}

// Bracket 2^(c/b), 0 < c < b, inside [1,2] by K bisection steps.
// Endpoints stay exact dyadics; invariant lo^b <= 2^c <= hi^b.
Interval bracket_pow2_fraction(std::uint64_t c, std::uint64_t b, std::int64_t steps) {
  Dyadic lo(1), hi(2);
  for (std::int64_t i = 0; i < steps; ++i) {
    const Dyadic mid = (lo + hi).half();
    const std::int64_t k = -mid.exponent();  // mid in (1,2): exponent <= 0
    const std::int64_t target = static_cast<std::int64_t>(c) + k * static_cast<std::int64_t>(b);
    if (compare_pow_with_power_of_two(mid.mantissa(), b, target) <= 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return Interval(lo, hi);
}

// Enclosure of log2(x) for a dyadic x that is not a power of two, with
// granularity 2^-j: j renormalized interval squarings, leading bits exact.
Interval log2_point_raw(const Dyadic& x, std::int64_t j) {
  const std::int64_t s = x.floor_log2_abs();
  // u = x / 2^s in (1,2), strictly: x is not a power of two.
  const Dyadic u(x.mantissa(), x.exponent() - s);
  const std::int64_t sig = j + 24;
  Dyadic plo = u, phi = u;
  BigInt e = 0;  // accumulated exponent: [plo,phi]*2^e encloses u^(2^i)
  for (std::int64_t i = 0; i < j; ++i) {
    plo = (plo * plo).round_sig_down(sig);
    phi = (phi * phi).round_sig_up(sig);
    e <<= 1;
    // renormalize so plo lands back in [1,2)
    const std::int64_t shift = plo.floor_log2_abs();
    if (shift != 0) {
      plo = Dyadic(plo.mantissa(), plo.exponent() - shift);
      phi = Dyadic(phi.mantissa(), phi.exponent() - shift);
      e += shift;
    }
  }
  // log2(u) in [(e + blo)/2^j, (e + bhi)/2^j]
  const BigInt blo = e + plo.floor_log2_abs();
  const BigInt bhi = e + phi.floor_log2_abs() + 1;
  return Interval(Dyadic(blo, -j) + Dyadic(s), Dyadic(bhi, -j) + Dyadic(s));
}

}  // namespace

Interval log2_point(const Dyadic& x, std::int64_t bits) {
  if (x.sign() <= 0) throw NonPositiveArgument("log2: argument <= 0");
  if (x.is_power_of_two()) return Interval::exact(Dyadic(x.exponent()));
  // Intersect over doubling granularity tiers: results at finer precision are
  // then nested inside coarser ones by construction.
  std::int64_t tier = 32;
  while (tier < bits + 2) tier *= 2;
  Interval acc = log2_point_raw(x, 32);
  for (std::int64_t j = 64; j <= tier; j *= 2) {
    const Interval next = log2_point_raw(x, j);
    acc = Interval(std::max(acc.lo(), next.lo()), std::min(acc.hi(), next.hi()));
  }
  return acc;
}

Interval log2(const Interval& a, const Precision& eps) {
  if (a.lo().sign() <= 0) throw NonPositiveArgument("log2: interval reaches <= 0");
  const std::int64_t bits = eps.working_bits();
  if (a.is_exact()) return log2_point(a.lo(), bits);
  const Interval lo_bounds = log2_point(a.lo(), bits);
  const Interval hi_bounds = log2_point(a.hi(), bits);
  return Interval(lo_bounds.lo(), hi_bounds.hi());
}

Interval pow2(const BigRational& q, const Precision& eps) {
  const BigInt num = numerator(q), den = denominator(q);
  const BigInt zf = floor_div(num, den);
  if (zf > (BigInt(1) << 62) || zf < -(BigInt(1) << 62))
    throw PrecisionError("pow2: exponent out of range");
  const auto z = static_cast<std::int64_t>(zf);
  if (den == 1) return Interval::exact(Dyadic::power_of_two(z));

  if (den > (BigInt(1) << 31))
    throw PrecisionError("pow2: fractional exponent denominator too large");
  const BigInt cf = num - zf * den;  // 0 < cf < den
  const auto b = static_cast<std::uint64_t>(den);
  const auto c = static_cast<std::uint64_t>(cf);
  std::int64_t steps = eps.working_bits() + 2;
  if (z > 0) steps += z;  // bracket width scales by 2^z
  const Interval frac = bracket_pow2_fraction(c, b, steps);
  return Interval(Dyadic(frac.lo().mantissa(), frac.lo().exponent() + z),
                  Dyadic(frac.hi().mantissa(), frac.hi().exponent() + z));
}

}  // namespace aitherm
