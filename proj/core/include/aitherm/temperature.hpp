// Temperature: a positive rational with its zone relative to the T = 1
// phase boundary. Rationality keeps every exponent n/T rational.
#pragma once

#include <string>

#include "aitherm/dyadic.hpp"
#include "aitherm/errors.hpp"

namespace aitherm {

enum class TempZone { sub_unit, unit, super_unit };

class Temperature {
 public:
  explicit Temperature(BigRational value) : value_(std::move(value)) {
    if (value_ <= 0) throw ZoneError("temperature must be > 0");
  }
  // Accepts "num/den" or a plain integer; decimals are rejected by design.
  static Temperature parse(const std::string& text);

  const BigRational& value() const { return value_; }
  BigRational reciprocal() const { return BigRational(1) / value_; }

  TempZone zone() const {
    if (value_ < 1) return TempZone::sub_unit;
    if (value_ == 1) return TempZone::unit;
    return TempZone::super_unit;
  }

  std::string str() const;

  friend bool operator==(const Temperature& a, const Temperature& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const Temperature& a, const Temperature& b) {
    return a.value_ < b.value_;
  }

 private:
  BigRational value_;
};

}  // namespace aitherm
