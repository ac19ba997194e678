#include "aitherm/spectrum.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <utility>

#include "aitherm/errors.hpp"
#include "aitherm/functions.hpp"

namespace aitherm {

namespace {

// Upper bound on x^L for a positive dyadic x, mantissas capped.
Dyadic dyadic_pow_up(const Dyadic& x, std::uint64_t L, std::int64_t sig) {
  Dyadic result(1);
  Dyadic base = x;
  while (L > 0) {
    if (L & 1) result = (result * base).round_sig_up(sig);
    L >>= 1;
    if (L > 0) base = (base * base).round_sig_up(sig);
  }
  return result;
}

// Upper bound on q^e for positive rational q and integer e (either sign).
BigRational rational_pow(const BigRational& q, std::int64_t e) {
  BigRational r = 1;
  BigRational base = e >= 0 ? q : BigRational(1) / q;
  std::uint64_t k = e >= 0 ? static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(-e);
  while (k > 0) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return r;
}

}  // namespace

std::optional<Dyadic> power_series_tail_upper(std::uint64_t L, std::int64_t e,
                                              const BigRational& beta, std::int64_t bits) {
  if (L == 0) L = 1;
  if (beta > 0) return std::nullopt;
  if (beta == 0) {
    // sum n^e converges only for e <= -2; integral comparison gives
    // sum_{n>=L} n^e <= (L-1)^(e+1)/(-e-1) for L >= 2.
    if (e > -2) return std::nullopt;
    if (L == 1) {
      const auto rest = power_series_tail_upper(2, e, beta, bits);
      return Dyadic(1) + *rest;
    }
    const BigRational bound =
        rational_pow(BigRational(L - 1), e + 1) / BigRational(-e - 1);
    return Dyadic::from_rational_ceil(bound, bits);
  }
  // beta < 0: x = 2^beta < 1. Terms n^e x^n from n = L on are dominated by
  // the geometric sequence L^e x^L rho^k with rho = x ((L+1)/L)^e, since
  // ((n+1)/n)^e <= ((L+1)/L)^e for n >= L when e > 0 (and <= 1 otherwise).
  const Interval x = pow2(beta, Precision::bits(std::max<std::int64_t>(bits, 16)));
  const Dyadic xh = x.hi();
  if (xh >= Dyadic(1)) return std::nullopt;
  Dyadic rho = xh;
  if (e > 0) {
    const BigRational ratio = rational_pow(BigRational(L + 1) / BigRational(L), e);
    rho = Dyadic::from_rational_ceil(xh.to_rational() * ratio, bits + 8);
    if (rho >= Dyadic(1)) return std::nullopt;
  }
  const std::int64_t sig = bits + 16;
  const Dyadic xpow = dyadic_pow_up(xh, L, sig);
  const Dyadic geom = div_ceil(Dyadic(1), Dyadic(1) - rho, sig);
  Dyadic lead;
  if (e >= 0) {
    lead = Dyadic(pow(BigInt(L), static_cast<unsigned>(e)), 0);
  } else {
    lead = div_ceil(Dyadic(1), Dyadic(pow(BigInt(L), static_cast<unsigned>(-e)), 0), sig);
  }
  return ((lead * xpow).round_sig_up(sig) * geom).round_sig_up(sig);
}

std::optional<Dyadic> SpectrumRule::tail_upper(const BigRational& theta, std::uint64_t L,
                                               std::int64_t bits) const {
  const auto maj = majorant();
  if (!maj) return std::nullopt;
  const std::uint64_t start = std::max<std::uint64_t>(L, maj->n0);
  auto bound = power_series_tail_upper(start, maj->d, maj->g - theta, bits);
  if (!bound) return std::nullopt;
  Dyadic total = Dyadic::from_rational_ceil(maj->c * bound->to_rational(), bits);
  // Cover [L, start) exactly when the majorant starts later.
  for (std::uint64_t n = L; n < start; ++n) {
    const BigInt m = multiplicity(n);
    if (m.is_zero()) continue;
    const Interval w = pow2(-theta * n, Precision::bits(bits + 8));
    total = total + Dyadic(m, 0) * w.hi();
  }
  return total;
}

std::optional<Dyadic> SpectrumRule::weighted_tail_upper(const BigRational& theta, std::uint64_t L,
                                                        std::int64_t bits) const {
  const auto maj = majorant();
  if (!maj) return std::nullopt;
  const std::uint64_t start = std::max<std::uint64_t>(L, maj->n0);
  auto bound = power_series_tail_upper(start, maj->d + 1, maj->g - theta, bits);
  if (!bound) return std::nullopt;
  Dyadic total = Dyadic::from_rational_ceil(maj->c * bound->to_rational(), bits);
  for (std::uint64_t n = L; n < start; ++n) {
    const BigInt m = multiplicity(n);
    if (m.is_zero()) continue;
    const Interval w = pow2(-theta * n, Precision::bits(bits + 8));
    total = total + Dyadic(m * n, 0) * w.hi();
  }
  return total;
}

LengthSpectrum LengthSpectrum::finite(std::map<std::uint64_t, BigInt> entries) {
  // drop zero rows, validate
  for (auto it = entries.begin(); it != entries.end();) {
    if (it->second.is_zero()) {
      it = entries.erase(it);
      continue;
    }
    if (it->first == 0) throw InvalidSpectrum("length spectrum indexes positive lengths only");
    if (it->second < 0) throw InvalidSpectrum("negative multiplicity");
    if (it->first <= 64 * 1024 && it->second > (BigInt(1) << static_cast<unsigned>(it->first)))
      throw InvalidSpectrum("multiplicity exceeds 2^n at length " + std::to_string(it->first));
    ++it;
  }
  LengthSpectrum s;
  s.kind_ = Presentation::finite;
  s.entries_ = std::move(entries);
  // Exact Kraft check: sum m(n) 2^-n <= 1.
  Dyadic sum;
  for (const auto& [n, m] : s.entries_)
    sum = sum + Dyadic(m, -static_cast<std::int64_t>(n));
  if (sum > Dyadic(1)) throw InvalidSpectrum("Kraft sum exceeds 1: not realizable");
  return s;
}

LengthSpectrum LengthSpectrum::from_rule(std::shared_ptr<const SpectrumRule> rule) {
  if (!rule) throw InvalidSpectrum("null spectrum rule");
  LengthSpectrum s;
  s.kind_ = Presentation::rule;
  s.rule_ = std::move(rule);
  if (!s.rule_->kraft_certified_by_construction() && s.rule_->majorant()) {
    // Certified Kraft <= 1 check: exact partial sums plus the rule's tail.
    const BigRational one = 1;
    bool certified = false;
    Dyadic partial;
    std::uint64_t covered = 0;
    for (std::uint64_t L = 16; L <= (1u << 14); L *= 2) {
      for (std::uint64_t n = covered + 1; n <= L; ++n) {
        const BigInt m = s.rule_->multiplicity(n);
        if (m < 0) throw InvalidSpectrum("negative multiplicity from rule");
        if (n <= 4096 && m > (BigInt(1) << static_cast<unsigned>(n)))
          throw InvalidSpectrum("rule multiplicity exceeds 2^n at length " + std::to_string(n));
        if (!m.is_zero()) partial = partial + Dyadic(m, -static_cast<std::int64_t>(n));
      }
      covered = L;
      if (partial > Dyadic(1)) throw InvalidSpectrum("Kraft sum exceeds 1: not realizable");
      const auto tail = s.rule_->tail_upper(one, L + 1, 96);
      if (!tail && L >= 64) break;  // the majorant diverges at theta = 1: hopeless
      if (tail && partial + *tail <= Dyadic(1)) {
        certified = true;
        break;
      }
    }
    if (!certified)
      throw InvalidSpectrum("cannot certify Kraft <= 1 for rule spectrum (majorant too weak?)");
  }
  return s;
}

BigInt LengthSpectrum::multiplicity(std::uint64_t n) const {
  if (n == 0) return 0;
  if (kind_ == Presentation::finite) {
    const auto it = entries_.find(n);
    return it == entries_.end() ? BigInt(0) : it->second;
  }
  return rule_->multiplicity(n);
}

const std::map<std::uint64_t, BigInt>& LengthSpectrum::finite_entries() const {
  if (kind_ != Presentation::finite) throw Error("finite_entries: spectrum is rule-presented");
  return entries_;
}

std::optional<std::uint64_t> LengthSpectrum::max_length() const {
  if (kind_ != Presentation::finite) return std::nullopt;
  if (entries_.empty()) return std::nullopt;
  return entries_.rbegin()->first;
}

BigInt LengthSpectrum::total_count() const {
  if (kind_ != Presentation::finite) throw Error("total_count: spectrum is rule-presented");
  BigInt t = 0;
  for (const auto& [n, m] : entries_) t += m;
  return t;
}

std::optional<std::uint64_t> LengthSpectrum::first_nonzero(std::uint64_t scan_limit) const {
  return next_nonzero(0, scan_limit);
}

std::optional<std::uint64_t> LengthSpectrum::next_nonzero(std::uint64_t after,
                                                          std::uint64_t scan_limit) const {
  if (kind_ == Presentation::finite) {
    for (auto it = entries_.upper_bound(after); it != entries_.end(); ++it)
      if (it->second > 0) return it->first;
    return std::nullopt;
  }
  for (std::uint64_t n = after + 1; n <= scan_limit; ++n)
    if (rule_->multiplicity(n) > 0) return n;
  return std::nullopt;
}

namespace {

std::optional<Dyadic> min_bound(std::optional<Dyadic> a, std::optional<Dyadic> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

std::optional<Dyadic> LengthSpectrum::tail_upper(const BigRational& theta, std::uint64_t L,
                                                 std::int64_t bits) const {
  if (L == 0) L = 1;
  if (kind_ == Presentation::finite) {
    Dyadic total;
    for (auto it = entries_.lower_bound(L); it != entries_.end(); ++it) {
      const Interval w = pow2(-theta * it->first, Precision::bits(bits + 8));
      total = total + Dyadic(it->second, 0) * w.hi();
    }
    return total;
  }
  // Generic bound from Kraft realizability: m(n) <= 2^n.
  const auto generic = power_series_tail_upper(L, 0, BigRational(1) - theta, bits);
  return min_bound(rule_->tail_upper(theta, L, bits), generic);
}

std::optional<Dyadic> LengthSpectrum::weighted_tail_upper(const BigRational& theta,
                                                          std::uint64_t L,
                                                          std::int64_t bits) const {
  if (L == 0) L = 1;
  if (kind_ == Presentation::finite) {
    Dyadic total;
    for (auto it = entries_.lower_bound(L); it != entries_.end(); ++it) {
      const Interval w = pow2(-theta * it->first, Precision::bits(bits + 8));
      total = total + Dyadic(it->second * it->first, 0) * w.hi();
    }
    return total;
  }
  const auto generic = power_series_tail_upper(L, 1, BigRational(1) - theta, bits);
  return min_bound(rule_->weighted_tail_upper(theta, L, bits), generic);
}

std::optional<Dyadic> LengthSpectrum::total_upper(const BigRational& theta,
                                                  std::int64_t bits) const {
  if (kind_ == Presentation::finite) return tail_upper(theta, 1, bits);
  const auto generic = power_series_tail_upper(1, 0, BigRational(1) - theta, bits);
  return min_bound(rule_->total_upper(theta, bits), generic);
}

std::optional<Dyadic> LengthSpectrum::weighted_total_upper(const BigRational& theta,
                                                           std::int64_t bits) const {
  if (kind_ == Presentation::finite) return weighted_tail_upper(theta, 1, bits);
  const auto generic = power_series_tail_upper(1, 1, BigRational(1) - theta, bits);
  return min_bound(rule_->weighted_total_upper(theta, bits), generic);
}

LengthSpectrum spectrum_of(const PrefixSet& set) {
  std::map<std::uint64_t, BigInt> entries;
  for (const auto& s : set.members()) {
    if (s.empty()) continue;  // lambda has length 0; spectra index positive lengths only
    entries[s.length()] += 1;
  }
  return LengthSpectrum::finite(std::move(entries));
}

Interval kraft_sum(const LengthSpectrum& spec, const Dyadic& eps) {
  if (eps.sign() < 0) throw PrecisionError("kraft_sum: eps must be >= 0");
  if (spec.is_finite()) {
    Dyadic sum;
    for (const auto& [n, m] : spec.finite_entries())
      sum = sum + Dyadic(m, -static_cast<std::int64_t>(n));
    return Interval::exact(sum);
  }
  if (eps.is_zero())
    throw PrecisionError("kraft_sum: eps must be > 0 for rule spectra");
  const BigRational one = 1;
  const std::int64_t bits = Precision(eps).working_bits();
  constexpr std::uint64_t kMaxL = 1u << 16;
  {  // feasibility: the certified tail must be able to reach eps at all
    const auto probe = spec.tail_upper(one, kMaxL, bits);
    if (!probe)
      throw TailUnbounded("kraft_sum: the rule spectrum has no certified tail majorant");
    if (*probe > eps)
      throw PrecisionError(
          "kraft_sum: requested width is unreachable within the truncation budget "
          "(tail bound at L=" +
          std::to_string(kMaxL) + " is " + probe->to_upper_science_string() + ")");
  }
  const std::int64_t grid = bits + 32;
  Dyadic plo, phi;
  std::uint64_t covered = 0;
  for (std::uint64_t L = 16; L <= kMaxL; L *= 2) {
    for (std::uint64_t n = covered + 1; n <= L; ++n) {
      const BigInt m = spec.multiplicity(n);
      if (!m.is_zero()) {
        const Dyadic term(m, -static_cast<std::int64_t>(n));
        plo = plo + term;
        phi = phi + term;
      }
      if ((n & 63u) == 0) {  // keep aligned mantissas bounded
        plo = plo.floor_to(grid);
        phi = phi.ceil_to(grid);
      }
    }
    covered = L;
    const auto tail = spec.tail_upper(one, L + 1, bits);
    if (tail && *tail <= eps) return Interval(plo, phi + *tail);
  }
  throw PrecisionError("kraft_sum: certified width not reached");
}

}  // namespace aitherm
