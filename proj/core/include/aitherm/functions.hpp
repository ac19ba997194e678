// Enclosures of 2^q (rational q) and log2 over dyadic intervals.
//
// No transcendental library routine is involved anywhere: 2^(a/b) comes from
// integer-exponent reduction plus b-th-root bracketing by bisection with
// exact dyadic comparisons, and log2 from repeated interval squaring with
// exact leading-bit extraction. All rounding is outward and auditable.
#pragma once

#include "aitherm/dyadic.hpp"
#include "aitherm/interval.hpp"

namespace aitherm {

// Enclosure of 2^q of width <= eps; exact (width 0) for integer q.
Interval pow2(const BigRational& q, const Precision& eps);

// Enclosure of {log2 x : x in a}; width <= eps + image width of a.
// Throws NonPositiveArgument if a.lo() <= 0.
Interval log2(const Interval& a, const Precision& eps);

// Enclosure of log2 of a single positive dyadic point, side error <= 2^-bits.
// Exact for powers of two. Results at doubling `bits` tiers are nested.
Interval log2_point(const Dyadic& x, std::int64_t bits);

}  // namespace aitherm
