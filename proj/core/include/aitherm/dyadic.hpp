// Exact dyadic rationals: mantissa * 2^exponent with unbounded integer
// mantissa. The carrier of every validated endpoint in the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace aitherm {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Floor/ceil integer division for signed BigInt (operator/ truncates).
BigInt floor_div(const BigInt& num, const BigInt& den);
BigInt ceil_div(const BigInt& num, const BigInt& den);

class Dyadic {
 public:
  Dyadic() : mantissa_(0), exponent_(0) {}
  Dyadic(long long v) : mantissa_(v), exponent_(0) { normalize(); }  // NOLINT(implicit)
  Dyadic(BigInt mantissa, std::int64_t exponent)
      : mantissa_(std::move(mantissa)), exponent_(exponent) {
    normalize();
  }

  static Dyadic power_of_two(std::int64_t e) { return Dyadic(BigInt(1), e); }
  // Largest dyadic on the 2^-bits grid that is <= num/den (resp. smallest >=).
  static Dyadic from_rational_floor(const BigRational& q, std::int64_t bits);
  static Dyadic from_rational_ceil(const BigRational& q, std::int64_t bits);

  const BigInt& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  bool is_zero() const { return mantissa_.is_zero(); }
  int sign() const { return mantissa_.sign(); }
  bool is_power_of_two() const { return mantissa_ == 1; }

  // floor(log2(|x|)); requires x != 0.
  std::int64_t floor_log2_abs() const;

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic half() const { return Dyadic(mantissa_, exponent_ - 1); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) >= 0; }
  static int compare(const Dyadic& a, const Dyadic& b);

  // Directed rounding onto the absolute grid of step 2^-bits.
  Dyadic floor_to(std::int64_t bits) const;
  Dyadic ceil_to(std::int64_t bits) const;
  // Directed rounding keeping at most `sig` significant mantissa bits.
  Dyadic round_sig_down(std::int64_t sig) const;
  Dyadic round_sig_up(std::int64_t sig) const;

  BigRational to_rational() const;
  // Exact decimal expansion (dyadics terminate in base 10).
  std::string to_decimal_string() const;
  // Upper-bounding short form like "3.2e-10" (round-up, 2 significant digits).
  std::string to_upper_science_string() const;

 private:
  void normalize();

  BigInt mantissa_;       // odd or zero after normalize()
  std::int64_t exponent_;
};

int compare(const BigRational& q, const Dyadic& d);

}  // namespace aitherm
