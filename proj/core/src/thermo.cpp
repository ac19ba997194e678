#include "aitherm/thermo.hpp"

#include <algorithm>
#include <cassert>

#include "aitherm/functions.hpp"

namespace aitherm {

namespace {

constexpr std::uint64_t kMaxTruncation = 1u << 17;

std::int64_t ceil_log2_u64(std::uint64_t v) {
  std::int64_t b = 0;
  while ((std::uint64_t(1) << b) < v) ++b;
  return b;
}

std::int64_t eps_bits(const Dyadic& eps) {
  const std::int64_t lg = eps.floor_log2_abs();
  return lg >= 0 ? 8 : -lg + 2;
}

BigInt rational_ceil(const BigRational& q) { return ceil_div(numerator(q), denominator(q)); }

struct SeriesPartials {
  Interval z;
  Interval zn;
};

// Partial sums over lengths 1..L. Exact (width 0) when theta = 1/T is an
// integer; otherwise an incremental interval power of omega = 2^-theta with
// relative outward rounding at each step.
SeriesPartials compute_partials(const LengthSpectrum& spec, const BigRational& theta,
                                std::uint64_t L, std::int64_t bits, bool weighted) {
  if (denominator(theta) == 1) {
    const BigInt tnum = numerator(theta);
    if (tnum > (BigInt(1) << 40)) throw PrecisionError("temperature reciprocal too large");
    const auto t = static_cast<std::int64_t>(tnum);
    Dyadic z, zn;
    for (std::uint64_t n = 1; n <= L; ++n) {
      const BigInt m = spec.multiplicity(n);
      if (m.is_zero()) continue;
      const std::int64_t e = -static_cast<std::int64_t>(n) * t;
      z = z + Dyadic(m, e);
      if (weighted) zn = zn + Dyadic(m * n, e);
    }
    return {Interval::exact(z), Interval::exact(zn)};
  }

  const std::int64_t sig = bits + ceil_log2_u64(L + 1) + 16;
  const std::int64_t grid = bits + 24;
  const BigInt theta_ceil = rational_ceil(theta);
  if (theta_ceil > (BigInt(1) << 40)) throw PrecisionError("temperature reciprocal too large");
  const Interval omega =
      pow2(-theta, Precision::bits(sig + static_cast<std::int64_t>(theta_ceil) + 4));
  Interval w = omega;
  Dyadic zlo, zhi, znlo, znhi;
  for (std::uint64_t n = 1; n <= L; ++n) {
    if (n > 1) {
      w = Interval((w.lo() * omega.lo()).round_sig_down(sig),
                   (w.hi() * omega.hi()).round_sig_up(sig));
    }
    const BigInt m = spec.multiplicity(n);
    if (!m.is_zero()) {
      const Dyadic md(m, 0);
      zlo = zlo + md * w.lo();
      zhi = zhi + md * w.hi();
      if (weighted) {
        const Dyadic mnd(m * n, 0);
        znlo = znlo + mnd * w.lo();
        znhi = znhi + mnd * w.hi();
      }
    }
    if ((n & 63u) == 0) {  // keep accumulated mantissas bounded
      zlo = zlo.floor_to(grid);
      zhi = zhi.ceil_to(grid);
      znlo = znlo.floor_to(grid);
      znhi = znhi.ceil_to(grid);
    }
  }
  return {Interval(zlo.floor_to(grid), zhi.ceil_to(grid)),
          Interval(znlo.floor_to(grid), znhi.ceil_to(grid))};
}

struct SeriesEval {
  QuantityResult z;
  QuantityResult zn;
};

// Adaptive truncation: double L until partial width plus certified tail meets
// eps (for the weighted series too, when requested).
SeriesEval eval_series(const LengthSpectrum& spec, const Temperature& T, const Dyadic& eps,
                       bool weighted) {
  const BigRational theta = T.reciprocal();
  const std::int64_t base_bits = eps_bits(eps);

  if (spec.is_finite()) {
    const auto maxlen = spec.max_length();
    const std::uint64_t L = maxlen ? *maxlen : 0;
    if (L == 0) return {{Interval(), 0, Dyadic()}, {Interval(), 0, Dyadic()}};
    for (std::int64_t bits = base_bits + 8;; bits *= 2) {
      const SeriesPartials p = compute_partials(spec, theta, L, bits, weighted);
      if (p.z.width() <= eps && (!weighted || p.zn.width() <= eps))
        return {{p.z, L, Dyadic()}, {p.zn, L, Dyadic()}};
      if (bits > (std::int64_t(1) << 24)) throw PrecisionError("eval_series: width not reached");
    }
  }

  {  // feasibility at the budget's edge: certificates must exist and suffice
    const std::int64_t bits = base_bits + 33;
    const auto zprobe = spec.tail_upper(theta, kMaxTruncation, bits);
    const auto nprobe = weighted ? spec.weighted_tail_upper(theta, kMaxTruncation, bits)
                                 : std::make_optional(Dyadic());
    if (!zprobe || !nprobe)
      throw NoConvergenceCertificate("no convergence certificate for this spectrum at T = " +
                                     T.str());
    if (*zprobe > eps || (weighted && *nprobe > eps))
      throw PrecisionError(
          "eval: requested width is unreachable within the truncation budget at T = " + T.str());
  }
  for (std::uint64_t L = 16; L <= kMaxTruncation; L *= 2) {
    const std::int64_t bits = base_bits + ceil_log2_u64(L + 1) + 16;
    const auto ztail = spec.tail_upper(theta, L + 1, bits);
    const auto ntail =
        weighted ? spec.weighted_tail_upper(theta, L + 1, bits) : std::make_optional(Dyadic());
    if (!ztail || !ntail) continue;
    if (*ztail > eps || (weighted && *ntail > eps)) continue;
    const SeriesPartials p = compute_partials(spec, theta, L, bits, weighted);
    if (p.z.width() + *ztail <= eps && (!weighted || p.zn.width() + *ntail <= eps)) {
      QuantityResult zr{Interval(p.z.lo(), p.z.hi() + *ztail), L, *ztail};
      QuantityResult nr{Interval(p.zn.lo(), p.zn.hi() + *ntail), L, *ntail};
      return {zr, nr};
    }
  }
  throw NoConvergenceCertificate("series truncation budget exhausted at T = " + T.str());
}

// Finite spectrum with exactly one populated length: E = n exactly, and for
// a single program F = n and S = 0 exactly.
std::optional<std::pair<std::uint64_t, BigInt>> singleton_of(const LengthSpectrum& spec) {
  if (!spec.is_finite() || spec.finite_entries().size() != 1) return std::nullopt;
  const auto& [n, m] = *spec.finite_entries().begin();
  return std::make_pair(n, m);
}

void require_nonempty(const LengthSpectrum& spec) {
  if (!spec.first_nonzero())
    throw EmptySpectrum("quantity undefined on an empty spectrum (empty domain)");
}

Dyadic dyadic_of_rational_floor_pos(const BigRational& q, std::int64_t bits) {
  Dyadic d = Dyadic::from_rational_floor(q, bits);
  if (d.sign() <= 0) d = Dyadic::power_of_two(-bits);
  return d;
}

}  // namespace

char quantity_letter(Quantity q) {
  switch (q) {
    case Quantity::Z: return 'Z';
    case Quantity::F: return 'F';
    case Quantity::E: return 'E';
    case Quantity::S: return 'S';
  }
  return '?';
}

Interval partial_Z(const LengthSpectrum& spec, const Temperature& T, std::uint64_t L,
                   const Dyadic& eps) {
  if (L < 1) throw Error("partial_Z: L >= 1 required");
  const BigRational theta = T.reciprocal();
  const bool exact = denominator(theta) == 1;
  if (eps.sign() < 0) throw PrecisionError("partial_Z: eps must be >= 0");
  if (eps.is_zero() && !exact)
    throw PrecisionError("partial_Z: width 0 is only attainable when 1/T is an integer");
  std::int64_t bits = exact ? 32 : eps_bits(eps) + ceil_log2_u64(L + 1) + 16;
  for (;; bits *= 2) {
    const SeriesPartials p = compute_partials(spec, theta, L, bits, false);
    if (exact || p.z.width() <= eps) return p.z;
    if (bits > (std::int64_t(1) << 24)) throw PrecisionError("partial_Z: width not reached");
  }
}

Dyadic tail_bound_Z(const LengthSpectrum& spec, const Temperature& T, std::uint64_t L) {
  if (T.zone() != TempZone::sub_unit)
    throw ZoneError("tail_bound_Z: requires T < 1 (got T = " + T.str() + ")");
  const auto bound = spec.tail_upper(T.reciprocal(), L, 96);
  assert(bound);  // the generic Kraft bound always applies for T < 1
  return *bound;
}

QuantityResult eval_Z(const LengthSpectrum& spec, const Temperature& T, const Precision& eps) {
  return eval_series(spec, T, eps.eps, false).z;
}

QuantityResult eval_F(const LengthSpectrum& spec, const Temperature& T, const Precision& eps) {
  require_nonempty(spec);
  if (const auto single = singleton_of(spec); single && single->second == 1) {
    // Z = 2^(-n/T), so F = -T log2 Z = n exactly.
    return {Interval::exact(Dyadic(static_cast<long long>(single->first))), single->first,
            Dyadic()};
  }
  Dyadic eps_z = eps.eps.half().half();
  for (int round = 0; round < 16; ++round) {
    const QuantityResult z = eval_series(spec, T, eps_z, false).z;
    if (z.enclosure.lo().sign() <= 0) {  // truncation missed every populated length
      eps_z = eps_z.half().half();
      continue;
    }
    const std::int64_t bits =
        std::max<std::int64_t>(48, eps_bits(eps.eps) - z.enclosure.lo().floor_log2_abs() + 16);
    const Interval lg = log2(z.enclosure, Precision::bits(bits));
    const Interval f = iscale(lg, -T.value(), bits + 8);
    if (f.width() <= eps.eps) return {f, z.truncation_length, f.width()};
    // log2 amplifies by 1/(Z ln 2); retarget from the observed magnitude
    eps_z = dyadic_of_rational_floor_pos(
        eps.eps.to_rational() * z.enclosure.lo().to_rational() / 8, 4 * bits);
  }
  throw PrecisionError("eval_F: precision loop did not converge");
}

QuantityResult eval_E(const LengthSpectrum& spec, const Temperature& T, const Precision& eps) {
  require_nonempty(spec);
  if (const auto single = singleton_of(spec)) {
    // all programs share one length n: E = n exactly
    return {Interval::exact(Dyadic(static_cast<long long>(single->first))), single->first,
            Dyadic()};
  }
  Dyadic eps_w = eps.eps.half().half();
  for (int round = 0; round < 16; ++round) {
    const SeriesEval se = eval_series(spec, T, eps_w, true);
    if (se.z.enclosure.lo().sign() <= 0) {
      eps_w = eps_w.half();
      continue;
    }
    const std::int64_t bits = std::max<std::int64_t>(
        48, eps_bits(eps.eps) - se.z.enclosure.lo().floor_log2_abs() + 16);
    const Interval e = idiv(se.zn.enclosure, se.z.enclosure, bits);
    if (e.width() <= eps.eps) return {e, se.z.truncation_length, e.width()};
    eps_w = dyadic_of_rational_floor_pos(
        eps.eps.to_rational() * se.z.enclosure.lo().to_rational() / 16, 4 * bits);
  }
  throw PrecisionError("eval_E: precision loop did not converge");
}

QuantityResult eval_S(const LengthSpectrum& spec, const Temperature& T, const Precision& eps) {
  require_nonempty(spec);
  if (const auto single = singleton_of(spec); single && single->second == 1) {
    return {Interval::exact(Dyadic(0)), single->first, Dyadic()};  // E = F = n
  }
  // S = (E - F)/T: target the parts at eps*T/4.
  Dyadic part_eps =
      dyadic_of_rational_floor_pos(eps.eps.to_rational() * T.value() / 4, 4 * eps_bits(eps.eps));
  for (int round = 0; round < 16; ++round) {
    const QuantityResult e = eval_E(spec, T, Precision(part_eps));
    const QuantityResult f = eval_F(spec, T, Precision(part_eps));
    const std::int64_t bits = eps_bits(eps.eps) + 16;
    const Interval s =
        iscale(isub(e.enclosure, f.enclosure, bits), BigRational(1) / T.value(), bits);
    if (s.width() <= eps.eps)
      return {s, std::max(e.truncation_length, f.truncation_length), s.width()};
    part_eps = part_eps.half().half();
  }
  throw PrecisionError("eval_S: precision loop did not converge");
}

QuantityResult eval_quantity(Quantity q, const LengthSpectrum& spec, const Temperature& T,
                             const Precision& eps) {
  switch (q) {
    case Quantity::Z: return eval_Z(spec, T, eps);
    case Quantity::F: return eval_F(spec, T, eps);
    case Quantity::E: return eval_E(spec, T, eps);
    case Quantity::S: return eval_S(spec, T, eps);
  }
  throw Error("eval_quantity: bad quantity");
}

ThermoReport eval_all(const LengthSpectrum& spec, const Temperature& T, const Precision& eps) {
  ThermoReport r{eval_Z(spec, T, eps), eval_F(spec, T, eps), eval_E(spec, T, eps),
                 eval_S(spec, T, eps)};
  // Cross-identity consistency: the defining relations must intersect.
  if (r.Z.enclosure.lo().sign() > 0) {
    const std::int64_t bits = eps.working_bits() + 8;
    const Interval f_check = iscale(log2(r.Z.enclosure, eps), -T.value(), bits);
    if (!f_check.intersects(r.F.enclosure))
      throw Error("internal: F enclosure inconsistent with -T log2 Z");
    const Interval s_check =
        iscale(isub(r.E.enclosure, r.F.enclosure, bits), BigRational(1) / T.value(), bits);
    if (!s_check.intersects(r.S.enclosure))
      throw Error("internal: S enclosure inconsistent with (E - F)/T");
  }
  return r;
}

DivergenceOutcome detect_divergence(const LengthSpectrum& spec, const Temperature& T,
                                    const BigRational& M, std::uint64_t length_budget) {
  if (T.zone() != TempZone::super_unit)
    throw ZoneError("detect_divergence: requires T > 1 (got T = " + T.str() + ")");
  const BigRational theta = T.reciprocal();
  const std::int64_t bits = 64 + ceil_log2_u64(length_budget + 1);

  // A certified total below M rules out any crossing without scanning.
  {
    const std::uint64_t L0 = 64;
    const auto tail = spec.tail_upper(theta, L0 + 1, bits);
    if (tail) {
      const SeriesPartials head = compute_partials(spec, theta, L0, bits, false);
      const Dyadic total = head.z.hi() + *tail;
      if (compare(M, total) >= 0)
        return {DivergenceOutcome::Kind::certified_convergent, 0, total};
    }
  }

  // Incremental scan for the least crossing length, certified from below.
  const bool exact = denominator(theta) == 1;
  const std::int64_t sig = bits + 16;
  Interval omega = exact ? Interval() : pow2(-theta, Precision::bits(sig + 8));
  Interval w;
  Dyadic zlo, zhi;
  for (std::uint64_t n = 1; n <= length_budget; ++n) {
    if (exact) {
      const auto t = static_cast<std::int64_t>(numerator(theta));
      w = Interval::exact(Dyadic::power_of_two(-static_cast<std::int64_t>(n) * t));
    } else {
      w = (n == 1) ? omega
                   : Interval((w.lo() * omega.lo()).round_sig_down(sig),
                              (w.hi() * omega.hi()).round_sig_up(sig));
    }
    const BigInt m = spec.multiplicity(n);
    if (!m.is_zero()) {
      zlo = (zlo + Dyadic(m, 0) * w.lo()).floor_to(2 * sig);
      zhi = (zhi + Dyadic(m, 0) * w.hi()).ceil_to(2 * sig);
      if (compare(M, zlo) < 0) return {DivergenceOutcome::Kind::crossed, n, std::nullopt};
    }
  }
  return {DivergenceOutcome::Kind::budget_exhausted, length_budget, std::nullopt};
}

}  // namespace aitherm
