#include "aitherm/rules.hpp"

#include "aitherm/errors.hpp"

namespace aitherm {

FloorPowOverPolyRule::FloorPowOverPolyRule(std::uint64_t a, std::uint64_t b) : a_(a), b_(b) {
  if (a < 1) throw InvalidSpectrum("floor_pow_over_poly: a >= 1 required");
  if (b < 2) throw InvalidSpectrum("floor_pow_over_poly: b >= 2 required (Kraft divergent otherwise)");
}

BigInt FloorPowOverPolyRule::multiplicity(std::uint64_t n) const {
  if (n == 0) return 0;
  if (n > (1u << 20)) throw Error("floor_pow_over_poly: length out of supported range");
  const BigInt den = BigInt(a_) * pow(BigInt(n), static_cast<unsigned>(b_));
  return (BigInt(1) << static_cast<unsigned>(n)) / den;  // positive: truncation == floor
}

std::string FloorPowOverPolyRule::formula() const {
  return "m(n) = floor(2^n / (" + std::to_string(a_) + " * n^" + std::to_string(b_) + "))";
}

}  // namespace aitherm
