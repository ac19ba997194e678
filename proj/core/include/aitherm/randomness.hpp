// Bit extraction from real expansions and desk-scale compression-rate
// profiling: H(first n bits)/n rows built from certified complexity upper
// bounds. The deficiency probe is a descriptive statistic only; nothing here
// ever claims a real is (non-)random.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "aitherm/bitstring.hpp"
#include "aitherm/interval.hpp"
#include "aitherm/machine.hpp"

namespace aitherm {

class RealSource {
 public:
  // Must return an enclosure of width <= 2^-bits; successive calls with
  // increasing bits must be nested (computable-real presentation).
  using EnclosureFn = std::function<Interval(std::int64_t bits)>;

  static RealSource rational(BigRational value) {
    RealSource s;
    s.rational_ = std::move(value);
    return s;
  }
  static RealSource enclosure_stream(EnclosureFn fn, std::int64_t precision_ceiling = 4096) {
    RealSource s;
    s.stream_ = std::move(fn);
    s.ceiling_ = precision_ceiling;
    return s;
  }

  bool is_rational() const { return stream_ == nullptr; }
  const BigRational& rational_value() const { return rational_; }
  const EnclosureFn& stream() const { return stream_; }
  std::int64_t precision_ceiling() const { return ceiling_; }

 private:
  RealSource() = default;
  BigRational rational_;
  EnclosureFn stream_;
  std::int64_t ceiling_ = 4096;
};

// First n bits of alpha - floor(alpha), under the expansion convention with
// infinitely many zeros (dyadic rationals terminate). Enclosure streams are
// refined until they fit one half-open dyadic cell [k/2^n, (k+1)/2^n);
// PrecisionExhausted past the ceiling signals alpha may be dyadic.
BitString rest_bits(const RealSource& alpha, std::uint64_t n);

struct ProfileRow {
  std::uint64_t n = 0;
  std::optional<std::uint64_t> h_upper;  // nullopt: no program found in the window
  std::optional<BigRational> ratio() const {
    if (!h_upper) return std::nullopt;
    return BigRational(*h_upper, n);
  }
};

struct CompressionProfile {
  std::vector<ProfileRow> rows;  // sorted by n
};

CompressionProfile compression_profile(const Machine& m, const RealSource& alpha,
                                       std::uint64_t n_max, std::uint64_t max_len,
                                       std::uint64_t steps);

// max over rows of (T*n - h_upper): an empirical lower bound on the
// deficiency constant at these n. nullopt (undefined) when the profile is
// empty or any row has no h_upper. Requires 0 <= T <= 1.
std::optional<BigRational> deficiency_probe(const CompressionProfile& profile,
                                            const BigRational& T);

}  // namespace aitherm
