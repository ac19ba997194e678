// The four thermodynamic quantities of a machine's length spectrum:
//   Z(T) = sum_p 2^(-|p|/T)            (partition function)
//   F(T) = -T log2 Z(T)                (free energy)
//   E(T) = sum_p |p| 2^(-|p|/T) / Z(T) (energy)
//   S(T) = (E(T) - F(T)) / T           (entropy)
// evaluated with certified truncation error. Series are summed by length;
// the limits do not depend on the enumeration order of the domain.
#pragma once

#include <cstdint>
#include <optional>

#include "aitherm/interval.hpp"
#include "aitherm/spectrum.hpp"
#include "aitherm/temperature.hpp"

namespace aitherm {

enum class Quantity { Z, F, E, S };

char quantity_letter(Quantity q);

struct QuantityResult {
  Interval enclosure;
  std::uint64_t truncation_length = 0;
  // Certified upper bound on the error the enclosure already accounts for
  // beyond the computed partial sums (the folded series tails for Z; the
  // total certified error for the derived quantities F, E, S).
  Dyadic tail_bound;
};

// Enclosure of the truncated sum over lengths n <= L, width <= eps
// (width 0 whenever 1/T is an integer, where every term is exact).
Interval partial_Z(const LengthSpectrum& spec, const Temperature& T, std::uint64_t L,
                   const Dyadic& eps);

// Certified upper bound on sum_{n>=L} m(n) 2^(-n/T) for T < 1: the generic
// Kraft-based geometric bound, sharpened by the spectrum's own majorant when
// one applies. Throws ZoneError for T >= 1.
Dyadic tail_bound_Z(const LengthSpectrum& spec, const Temperature& T, std::uint64_t L);

QuantityResult eval_Z(const LengthSpectrum& spec, const Temperature& T, const Precision& eps);
QuantityResult eval_F(const LengthSpectrum& spec, const Temperature& T, const Precision& eps);
QuantityResult eval_E(const LengthSpectrum& spec, const Temperature& T, const Precision& eps);
QuantityResult eval_S(const LengthSpectrum& spec, const Temperature& T, const Precision& eps);
QuantityResult eval_quantity(Quantity q, const LengthSpectrum& spec, const Temperature& T,
                             const Precision& eps);

// Joint enclosures at one temperature; construction re-checks the defining
// identities F = -T log2 Z and S = (E - F)/T by interval intersection.
struct ThermoReport {
  QuantityResult Z, F, E, S;
};
ThermoReport eval_all(const LengthSpectrum& spec, const Temperature& T, const Precision& eps);

struct DivergenceOutcome {
  enum class Kind {
    crossed,               // least L with certified partial_Z(L) > M
    certified_convergent,  // the series provably never exceeds M (bound attached)
    budget_exhausted,      // no crossing within the length budget, no certificate
  };
  Kind kind;
  std::uint64_t length = 0;
  std::optional<Dyadic> certificate;  // upper bound on Z(T) when certified_convergent
};

// Scan for the least truncation length whose certified partial-sum lower
// bound exceeds M. Requires T > 1 (ZoneError otherwise).
DivergenceOutcome detect_divergence(const LengthSpectrum& spec, const Temperature& T,
                                    const BigRational& M, std::uint64_t length_budget = 4096);

}  // namespace aitherm
