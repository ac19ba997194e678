#include "aitherm/temperature.hpp"

namespace aitherm {

Temperature Temperature::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (text.find('.') != std::string::npos)
        throw ZoneError("temperatures are exact rationals: write num/den, not a decimal");
      return Temperature(BigRational(BigInt(text)));
    }
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den.is_zero()) throw ZoneError("temperature denominator is zero");
    return Temperature(BigRational(num, den));
  } catch (const std::exception& e) {
    throw ZoneError(std::string("cannot parse temperature '") + text + "': " + e.what());
  }
}

std::string Temperature::str() const {
  const BigInt num = numerator(value_), den = denominator(value_);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace aitherm
