#include "aitherm/dyadic.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cassert>
#include <utility>

namespace aitherm {

namespace mp = boost::multiprecision;

BigInt floor_div(const BigInt& num, const BigInt& den) {
  assert(!den.is_zero());
  BigInt q = num / den;
  const BigInt r = num - q * den;
  if (!r.is_zero() && ((num < 0) != (den < 0))) --q;
  return q;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) {
  assert(!den.is_zero());
  BigInt q = num / den;
  const BigInt r = num - q * den;
  if (!r.is_zero() && ((num < 0) == (den < 0))) ++q;
  return q;
}

void Dyadic::normalize() {
  if (mantissa_.is_zero()) {
    exponent_ = 0;
    return;
  }
  const std::size_t shift = mp::lsb(abs(mantissa_));
  if (shift > 0) {
    mantissa_ >>= shift;
    exponent_ += static_cast<std::int64_t>(shift);
  }
}

std::int64_t Dyadic::floor_log2_abs() const {
  assert(!is_zero());
  return exponent_ + static_cast<std::int64_t>(mp::msb(abs(mantissa_)));
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  BigInt m = (a.mantissa_ << static_cast<unsigned>(a.exponent_ - e)) +
             (b.mantissa_ << static_cast<unsigned>(b.exponent_ - e));
  return Dyadic(std::move(m), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
}

int Dyadic::compare(const Dyadic& a, const Dyadic& b) {
  const int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  // Same nonzero sign: compare magnitudes by leading-bit position first so
  // widely separated values never force a long alignment shift.
  const std::int64_t la = a.floor_log2_abs(), lb = b.floor_log2_abs();
  if (la != lb) return ((la < lb) == (sa > 0)) ? -1 : 1;
  const Dyadic d = a - b;
  return d.sign();
}

Dyadic Dyadic::floor_to(std::int64_t bits) const {
  if (exponent_ >= -bits) return *this;  // already on a finer-or-equal grid
  const unsigned shift = static_cast<unsigned>(-bits - exponent_);
  if (mantissa_ >= 0) return Dyadic(mantissa_ >> shift, -bits);
  // toward -inf: -ceil(|m| / 2^shift)
  const BigInt mag = -mantissa_;
  BigInt q = mag >> shift;
  if ((q << shift) != mag) ++q;
  return Dyadic(-q, -bits);
}

Dyadic Dyadic::ceil_to(std::int64_t bits) const {
  return -((-*this).floor_to(bits));
}

Dyadic Dyadic::round_sig_down(std::int64_t sig) const {
  if (is_zero()) return *this;
  const auto width = static_cast<std::int64_t>(mp::msb(abs(mantissa_))) + 1;
  if (width <= sig) return *this;
  return floor_to(-(exponent_ + (width - sig)));
}

Dyadic Dyadic::round_sig_up(std::int64_t sig) const {
  if (is_zero()) return *this;
  const auto width = static_cast<std::int64_t>(mp::msb(abs(mantissa_))) + 1;
  if (width <= sig) return *this;
  return ceil_to(-(exponent_ + (width - sig)));
}

Dyadic Dyadic::from_rational_floor(const BigRational& q, std::int64_t bits) {
  const BigInt num = numerator(q), den = denominator(q);
  BigInt scaled;
  if (bits >= 0) {
    scaled = floor_div(num << static_cast<unsigned>(bits), den);
  } else {
    scaled = floor_div(num, den << static_cast<unsigned>(-bits));
  }
  return Dyadic(std::move(scaled), -bits);
}

Dyadic Dyadic::from_rational_ceil(const BigRational& q, std::int64_t bits) {
  return -from_rational_floor(-q, bits);
}

BigRational Dyadic::to_rational() const {
  BigRational r(mantissa_);
  if (exponent_ >= 0) {
    r *= BigRational(BigInt(1) << static_cast<unsigned>(exponent_));
  } else {
    r /= BigRational(BigInt(1) << static_cast<unsigned>(-exponent_));
  }
  return r;
}

std::string Dyadic::to_decimal_string() const {
  if (is_zero()) return "0";
  const bool neg = sign() < 0;
  BigInt m = abs(mantissa_);
  std::string out;
  if (exponent_ >= 0) {
    m <<= static_cast<unsigned>(exponent_);
    out = m.str();
  } else {
    // m / 2^k == m * 5^k / 10^k: exact decimal with k fractional digits.
    const unsigned k = static_cast<unsigned>(-exponent_);
    m *= pow(BigInt(5), k);
    std::string digits = m.str();
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    digits.insert(digits.size() - k, ".");
    // trim trailing zeros of the fraction
    const std::size_t last = digits.find_last_not_of('0');
    digits.erase(digits[last] == '.' ? last : last + 1);
    out = std::move(digits);
  }
  return neg ? "-" + out : out;
}

std::string Dyadic::to_upper_science_string() const {
  if (is_zero()) return "0";
  // Round |x| up to two significant decimal digits.
  BigInt m = abs(mantissa_);
  std::string dec = Dyadic(m, exponent_).to_decimal_string();
  const std::size_t dot = dec.find('.');
  std::string digits = dec;
  std::int64_t exp10;  // exponent of the leading digit
  if (dot == std::string::npos) {
    exp10 = static_cast<std::int64_t>(dec.size()) - 1;
  } else {
    digits.erase(dot, 1);
    const std::size_t lead = digits.find_first_not_of('0');
    digits.erase(0, lead);
    exp10 = (dot > 1 || dec[0] != '0')
                ? static_cast<std::int64_t>(dot) - 1
                : -static_cast<std::int64_t>(lead) + static_cast<std::int64_t>(dot) - 1;
  }
  if (digits.empty()) return "0";
  // take 2 digits, round up if anything nonzero follows
  unsigned two = static_cast<unsigned>(digits[0] - '0') * 10 +
                 (digits.size() > 1 ? static_cast<unsigned>(digits[1] - '0') : 0);
  if (digits.find_first_not_of('0', 2) != std::string::npos) ++two;
  if (two == 100) {
    two = 10;
    ++exp10;
  }
  std::string s = (sign() < 0 ? "-" : "");
  s += std::to_string(two / 10) + "." + std::to_string(two % 10) + "e" + std::to_string(exp10);
  return s;
}

int compare(const BigRational& q, const Dyadic& d) {
  // q vs m*2^e  <=>  num(q) vs m*2^e*den(q), all integers.
  BigInt lhs = numerator(q);
  BigInt rhs = d.mantissa() * denominator(q);
  const std::int64_t e = d.exponent();
  if (e >= 0) {
    rhs <<= static_cast<unsigned>(e);
  } else {
    lhs <<= static_cast<unsigned>(-e);
  }
  return lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
}

}  // namespace aitherm
