// Validated interval arithmetic over dyadic endpoints. Every operation
// returns an enclosure of the exact real result; rounding is always outward.
#pragma once

#include <cstdint>
#include <string>

#include "aitherm/dyadic.hpp"
#include "aitherm/errors.hpp"

namespace aitherm {

// Target enclosure width. working_bits() derives the grid used for outward
// rounding so that per-operation rounding noise stays well under eps.
struct Precision {
  explicit Precision(Dyadic eps_) : eps(std::move(eps_)) {
    if (eps.sign() <= 0) throw PrecisionError("Precision: eps must be > 0");
  }
  static Precision bits(std::int64_t b) { return Precision(Dyadic::power_of_two(-b)); }

  std::int64_t working_bits() const {
    const std::int64_t lg = eps.floor_log2_abs();
    return (lg >= 0 ? 32 : -lg) + 32;
  }

  Dyadic eps;
};

class Interval {
 public:
  Interval() : lo_(), hi_() {}
  Interval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw Error("Interval: lo > hi");
  }
  static Interval exact(Dyadic v) { return Interval(v, v); }

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Dyadic width() const { return hi_ - lo_; }
  Dyadic midpoint() const { return (lo_ + hi_).half(); }

  bool is_exact() const { return lo_ == hi_; }
  bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const BigRational& v) const {
    return compare(v, lo_) >= 0 && compare(v, hi_) <= 0;
  }
  bool contains(const Interval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool intersects(const Interval& other) const {
    return !(hi_ < other.lo_ || other.hi_ < lo_);
  }
  bool strictly_positive() const { return lo_.sign() > 0; }
  bool strictly_negative() const { return hi_.sign() < 0; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

  Interval outward(std::int64_t bits) const {
    return Interval(lo_.floor_to(bits), hi_.ceil_to(bits));
  }

  // "0.333333333 ± 4.7e-10"
  std::string to_display_string() const;

 private:
  Dyadic lo_, hi_;
};

enum class FieldOp { add, sub, mul, div };

// Endpoint arithmetic with outward rounding onto the 2^-bits grid.
Interval iadd(const Interval& a, const Interval& b, std::int64_t bits);
Interval isub(const Interval& a, const Interval& b, std::int64_t bits);
Interval imul(const Interval& a, const Interval& b, std::int64_t bits);
Interval idiv(const Interval& a, const Interval& b, std::int64_t bits);  // throws DivisionByZeroInterval
Interval ineg(const Interval& a);

// Enclosure of {x * q : x in a} for exact rational q.
Interval iscale(const Interval& a, const BigRational& q, std::int64_t bits);

// Enclosure of a^n, n >= 0, for a >= 0 (exponentiation by squaring).
Interval ipow_nonneg(const Interval& a, std::uint64_t n, std::int64_t bits);

// Spec-level entry point: mantissa cap chosen from eps.
Interval field_ops(const Interval& a, const Interval& b, FieldOp op, const Precision& eps);

// Largest dyadic on the grid that is <= x/y (resp. smallest >=), y != 0.
Dyadic div_floor(const Dyadic& x, const Dyadic& y, std::int64_t bits);
Dyadic div_ceil(const Dyadic& x, const Dyadic& y, std::int64_t bits);

}  // namespace aitherm
