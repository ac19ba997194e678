// Length spectra: the multiplicity function n -> m(n) of a prefix-free
// domain. Everything the thermodynamic quantities need from a machine is
// here, together with certified tail bounds for truncated series.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "aitherm/bitstring.hpp"
#include "aitherm/dyadic.hpp"
#include "aitherm/interval.hpp"

namespace aitherm {

// Documented closed-form bound m(n) <= c * 2^(g*n) * n^d for all n >= n0.
// The catalog: all-ones spectrum has (1, 0, 0), floor(2^n/(a n^b)) has
// (1/a, 1, -b). Every realizable spectrum also admits the generic (1, 1, 0)
// from m(n) <= 2^n, which is applied automatically where it converges.
struct TailMajorant {
  BigRational c;
  BigRational g;
  std::int64_t d = 0;
  std::uint64_t n0 = 1;
};

// Certified upper bound on sum_{n>=L} n^e * 2^(beta*n); nullopt when the
// series diverges or no bound is available at this L.
std::optional<Dyadic> power_series_tail_upper(std::uint64_t L, std::int64_t e,
                                              const BigRational& beta, std::int64_t bits);

// A total computable multiplicity rule with a documented formula.
class SpectrumRule {
 public:
  virtual ~SpectrumRule() = default;
  virtual BigInt multiplicity(std::uint64_t n) const = 0;
  virtual std::optional<TailMajorant> majorant() const = 0;
  virtual std::string formula() const = 0;

  // sum_{n>=L} m(n) 2^(-theta n), certified upper bound.
  virtual std::optional<Dyadic> tail_upper(const BigRational& theta, std::uint64_t L,
                                           std::int64_t bits) const;
  // sum_{n>=L} n m(n) 2^(-theta n), certified upper bound.
  virtual std::optional<Dyadic> weighted_tail_upper(const BigRational& theta, std::uint64_t L,
                                                    std::int64_t bits) const;
  // Certified upper bounds on the full sums (L = 1); convolution rules
  // override these with tighter factorwise bounds.
  virtual std::optional<Dyadic> total_upper(const BigRational& theta, std::int64_t bits) const {
    return tail_upper(theta, 1, bits);
  }
  virtual std::optional<Dyadic> weighted_total_upper(const BigRational& theta,
                                                     std::int64_t bits) const {
    return weighted_tail_upper(theta, 1, bits);
  }
  // Whether construction-time Kraft certification may be inherited (used by
  // convolution rules whose factors are already certified).
  virtual bool kraft_certified_by_construction() const { return false; }
};

class LengthSpectrum {
 public:
  LengthSpectrum() : kind_(Presentation::finite) {}

  enum class Presentation { finite, rule };

  // Validates n >= 1, m(n) >= 0, m(n) <= 2^n and the exact Kraft inequality.
  static LengthSpectrum finite(std::map<std::uint64_t, BigInt> entries);
  // Validates the certified Kraft inequality when the rule has a majorant
  // (skipped when the rule inherits certification from its construction).
  static LengthSpectrum from_rule(std::shared_ptr<const SpectrumRule> rule);

  Presentation presentation() const { return kind_; }
  bool is_finite() const { return kind_ == Presentation::finite; }

  BigInt multiplicity(std::uint64_t n) const;
  const std::map<std::uint64_t, BigInt>& finite_entries() const;
  const std::shared_ptr<const SpectrumRule>& rule() const { return rule_; }

  // Finite presentation only: largest length with m(n) > 0.
  std::optional<std::uint64_t> max_length() const;
  // Finite presentation only: sum of multiplicities.
  BigInt total_count() const;

  // Least n with m(n) > 0, scanning rules up to scan_limit.
  std::optional<std::uint64_t> first_nonzero(std::uint64_t scan_limit = 4096) const;
  // Least n past `after` with m(n) > 0.
  std::optional<std::uint64_t> next_nonzero(std::uint64_t after,
                                            std::uint64_t scan_limit = 4096) const;

  // Certified upper bound on sum_{n>=L} m(n) 2^(-theta n); combines the
  // rule's own bound with the generic Kraft-based one. Exact-style finite
  // computation for finite spectra. nullopt when nothing certifies the tail.
  std::optional<Dyadic> tail_upper(const BigRational& theta, std::uint64_t L,
                                   std::int64_t bits) const;
  // Same for sum_{n>=L} n m(n) 2^(-theta n).
  std::optional<Dyadic> weighted_tail_upper(const BigRational& theta, std::uint64_t L,
                                            std::int64_t bits) const;
  // Full-sum counterparts (tails at L = 1).
  std::optional<Dyadic> total_upper(const BigRational& theta, std::int64_t bits) const;
  std::optional<Dyadic> weighted_total_upper(const BigRational& theta, std::int64_t bits) const;

 private:
  Presentation kind_;
  std::map<std::uint64_t, BigInt> entries_;   // finite presentation
  std::shared_ptr<const SpectrumRule> rule_;  // rule presentation
};

// m(n) = number of members of length n; lambda (length 0) is not indexed.
LengthSpectrum spectrum_of(const PrefixSet& set);

// Enclosure of sum_n m(n) 2^-n of width <= eps; exact (width 0) for finite
// spectra, where eps may be zero. Throws TailUnbounded if a rule spectrum
// has no certified tail majorant.
Interval kraft_sum(const LengthSpectrum& spec, const Dyadic& eps);

}  // namespace aitherm
