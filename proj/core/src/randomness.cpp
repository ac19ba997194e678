#include "aitherm/randomness.hpp"

#include <algorithm>

#include "aitherm/errors.hpp"

namespace aitherm {

namespace {

BitString bits_of_residue(BigInt r, std::uint64_t n) {
  // r in [0, 2^n): emit n bits, most significant first.
  std::string s(n, '0');
  for (std::uint64_t i = 0; i < n; ++i) {
    if (bit_test(r, static_cast<unsigned>(n - 1 - i))) s[i] = '1';
  }
  return BitString(s);
}

BitString rest_bits_rational(const BigRational& alpha, std::uint64_t n) {
  const BigInt num = numerator(alpha), den = denominator(alpha);
  // floor(alpha * 2^n) mod 2^n is exactly the first n bits of the fractional
  // part under the terminating convention.
  const BigInt k = floor_div(num << static_cast<unsigned>(n), den);
  const BigInt f = floor_div(num, den);
  return bits_of_residue(k - (f << static_cast<unsigned>(n)), n);
}

BitString rest_bits_stream(const RealSource& alpha, std::uint64_t n) {
  const auto& fn = alpha.stream();
  for (std::int64_t bits = static_cast<std::int64_t>(n) + 4; bits <= alpha.precision_ceiling();
       bits += std::max<std::int64_t>(16, bits / 4)) {
    const Interval enc = fn(bits);
    // scale by 2^n and look for a half-open unit cell [k, k+1) around it
    const Dyadic lo(enc.lo().mantissa(), enc.lo().exponent() + static_cast<std::int64_t>(n));
    const Dyadic hi(enc.hi().mantissa(), enc.hi().exponent() + static_cast<std::int64_t>(n));
    const Dyadic kfloor = lo.floor_to(0);  // integer-valued: exponent >= 0
    const BigInt k = kfloor.mantissa() << static_cast<unsigned>(kfloor.exponent());
    if (hi < Dyadic(k + 1, 0)) {
      const BigInt f = floor_div(k, BigInt(1) << static_cast<unsigned>(n));
      return bits_of_residue(k - (f << static_cast<unsigned>(n)), n);
    }
  }
  throw PrecisionExhausted(
      "rest_bits: enclosure cannot be separated from a dyadic cell boundary within the "
      "precision ceiling (alpha may be dyadic; supply it as a rational)");
}

}  // namespace

BitString rest_bits(const RealSource& alpha, std::uint64_t n) {
  if (n == 0) return BitString();
  if (alpha.is_rational()) return rest_bits_rational(alpha.rational_value(), n);
  return rest_bits_stream(alpha, n);
}

CompressionProfile compression_profile(const Machine& m, const RealSource& alpha,
                                       std::uint64_t n_max, std::uint64_t max_len,
                                       std::uint64_t steps) {
  CompressionProfile profile;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const BitString prefix = rest_bits(alpha, n);
    profile.rows.push_back({n, complexity_upper(m, prefix, max_len, steps)});
  }
  return profile;
}

std::optional<BigRational> deficiency_probe(const CompressionProfile& profile,
                                            const BigRational& T) {
  if (T < 0 || T > 1) throw Error("deficiency_probe: T must lie in [0, 1]");
  if (profile.rows.empty()) return std::nullopt;
  std::optional<BigRational> best;
  for (const auto& row : profile.rows) {
    if (!row.h_upper) return std::nullopt;  // undefined on incomplete profiles
    const BigRational candidate = T * row.n - BigRational(*row.h_upper);
    if (!best || candidate > *best) best = candidate;
  }
  return best;
}

}  // namespace aitherm
