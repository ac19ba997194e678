// The named spectrum rules of the catalog. These are the only rule formulas
// the machine-spec format can express; arbitrary code is out of scope.
#pragma once

#include <cstdint>
#include <memory>

#include "aitherm/spectrum.hpp"

namespace aitherm {

// m(n) = 1 for every n >= 1 (the domain {0^l 1}). Geometric majorant
// c = 1, g = 0, d = 0: converges at every T > 0.
class OnesRule final : public SpectrumRule {
 public:
  BigInt multiplicity(std::uint64_t) const override { return 1; }
  std::optional<TailMajorant> majorant() const override {
    return TailMajorant{BigRational(1), BigRational(0), 0, 1};
  }
  std::string formula() const override { return "m(n) = 1"; }
};

// m(n) = floor(2^n / (a n^b)). Kraft sum is at most sum 1/(a n^b), certified
// by the majorant c = 1/a, g = 1, d = -b (b >= 2 required: b = 1 gives a
// harmonic, non-realizable spectrum). Terms m(n) 2^(-n/T) grow like
// 2^(n(1-1/T))/n^b, so the series diverges for every T > 1.
class FloorPowOverPolyRule final : public SpectrumRule {
 public:
  FloorPowOverPolyRule(std::uint64_t a, std::uint64_t b);

  BigInt multiplicity(std::uint64_t n) const override;
  std::optional<TailMajorant> majorant() const override {
    return TailMajorant{BigRational(1, a_), BigRational(1), -static_cast<std::int64_t>(b_), 1};
  }
  std::string formula() const override;

  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }

 private:
  std::uint64_t a_, b_;
};

}  // namespace aitherm
