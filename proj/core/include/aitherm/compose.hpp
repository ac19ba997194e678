// Composition of machines: Dom(C1 o C2 o ... o CN) is the set of
// concatenations p1 p2 ... pN, and the output is C1(p1). At the spectrum
// level composition is convolution of multiplicity functions, which is the
// whole story for every thermodynamic quantity: Z multiplies and F, E, S add.
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "aitherm/machine.hpp"
#include "aitherm/spectrum.hpp"

namespace aitherm {

// Exact convolution m(n) = sum_i a(i) b(n-i); finite * finite stays finite,
// anything else becomes a memoized convolution rule whose tails are bounded
// factorwise (see ConvolutionRule).
LengthSpectrum convolve_spectra(const LengthSpectrum& a, const LengthSpectrum& b);

class CompositeMachine {
 public:
  // Factors must be nonempty-domain machines (EmptyDomain otherwise).
  explicit CompositeMachine(std::vector<Machine> factors);

  const std::vector<Machine>& factors() const { return factors_; }
  const LengthSpectrum& spectrum() const { return spectrum_; }
  bool spectrum_is_lower_bound() const;  // true if any factor is budget-bounded universal
  std::string describe() const;

  bool materializable() const;  // every factor has an explicit finite domain
  // All concatenations, canonical order; throws if > cap or not materializable.
  PrefixSet materialize_domain(std::size_t cap = 1000000) const;
  // Concatenation -> C1(p1); requires factor 1 to have outputs (table or
  // universal snapshot).
  Table materialize_table(std::size_t cap = 1000000) const;

 private:
  std::vector<Machine> factors_;
  LengthSpectrum spectrum_;
};

CompositeMachine compose(std::vector<Machine> machines);

// n-fold self-composition C^n; spectrum is the n-fold self-convolution.
CompositeMachine power(const Machine& m, std::uint64_t n);

// V_n = v o (c^n). Requires c to be certified physically reasonable and a
// computable measure machine (PredicateFailed names the violated hypothesis)
// and v to have a nonempty domain.
CompositeMachine vn_family(const Machine& v, const Machine& c, std::uint64_t n);

// The convolution rule: multiplicities are computed exactly on demand from
// factor prefixes. Tail bounds use max(i, j) >= ceil(L/2) on i + j >= L:
//   W_ab(L)  <= W_a(h) V_b + V_a W_b(h),                       h = ceil(L/2)
//   NW_ab(L) <= NW_a(h) V_b + W_a(h) NV_b + NV_a W_b(h) + V_a NW_b(h)
// with V, NV factor totals; never the product identity under test.
class ConvolutionRule final : public SpectrumRule {
 public:
  ConvolutionRule(LengthSpectrum left, LengthSpectrum right);

  BigInt multiplicity(std::uint64_t n) const override;
  std::optional<TailMajorant> majorant() const override { return std::nullopt; }
  std::string formula() const override;
  std::optional<Dyadic> tail_upper(const BigRational& theta, std::uint64_t L,
                                   std::int64_t bits) const override;
  std::optional<Dyadic> weighted_tail_upper(const BigRational& theta, std::uint64_t L,
                                            std::int64_t bits) const override;
  std::optional<Dyadic> total_upper(const BigRational& theta, std::int64_t bits) const override;
  std::optional<Dyadic> weighted_total_upper(const BigRational& theta,
                                             std::int64_t bits) const override;
  bool kraft_certified_by_construction() const override { return true; }

  const LengthSpectrum& left() const { return left_; }
  const LengthSpectrum& right() const { return right_; }

 private:
  void ensure_prefix(std::uint64_t n) const;

  LengthSpectrum left_, right_;
  mutable std::vector<BigInt> memo_;  // memo_[n] = m(n); memo_[0] unused
  mutable std::mutex mu_;
};

}  // namespace aitherm
