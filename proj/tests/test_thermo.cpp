#include <doctest.h>

#include "aitherm/machine.hpp"
#include "aitherm/thermo.hpp"
#include "oracle.hpp"

using namespace aitherm;

namespace {

Temperature temp(long long n, long long d = 1) { return Temperature(BigRational(n, d)); }
const Precision kEps9{Dyadic::power_of_two(-31)};  // < 1e-9

BigRational rat(const char* s) { return BigRational(s); }

bool contains_oracle(const Interval& enc, const oracle::RatInterval& o) {
  // two independent enclosures of the same value must intersect
  return compare(BigRational(o.hi.str()), enc.lo()) >= 0 &&
         compare(BigRational(o.lo.str()), enc.hi()) <= 0;
}

}  // namespace

TEST_CASE("temperature zones and parsing") {
  CHECK(temp(1, 2).zone() == TempZone::sub_unit);
  CHECK(temp(1).zone() == TempZone::unit);
  CHECK(temp(5, 4).zone() == TempZone::super_unit);
  CHECK_THROWS_AS(Temperature(BigRational(0)), ZoneError);
  CHECK_THROWS_AS(Temperature(BigRational(-1, 2)), ZoneError);
  CHECK(Temperature::parse("19/20").value() == rat("19/20"));
  CHECK(Temperature::parse("2").value() == BigRational(2));
  CHECK_THROWS_AS(Temperature::parse("0.5"), ZoneError);
}

TEST_CASE("partial_Z examples") {
  const auto specB = builtin_B().spectrum();
  // machine B at T = 1, L = 2: exactly 3/4
  const Interval z1 = partial_Z(specB, temp(1), 2, Dyadic(0));
  CHECK(z1.is_exact());
  CHECK(z1.lo() == Dyadic(BigInt(3), -2));
  // at T = 1/2: 2^-2 + 2^-4 = 5/16 exactly
  const Interval z2 = partial_Z(specB, temp(1, 2), 2, Dyadic(0));
  CHECK(z2.is_exact());
  CHECK(z2.lo() == Dyadic(BigInt(5), -4));
  // truncating below every populated length gives exactly zero
  const Interval z0 =
      partial_Z(LengthSpectrum::finite({{7, BigInt(1)}}), temp(1, 2), 6, Dyadic(0));
  CHECK(z0.is_exact());
  CHECK(z0.lo() == Dyadic(0));
}

TEST_CASE("partial_Z is nondecreasing in L") {
  const auto spec = builtin_heavy_tail().spectrum();
  Dyadic prev_lo(-1);
  for (std::uint64_t L = 1; L <= 40; ++L) {
    const Interval z = partial_Z(spec, temp(9, 10), L, Dyadic::power_of_two(-40));
    CHECK(z.lo() >= prev_lo);
    prev_lo = z.lo();
  }
}

TEST_CASE("tail_bound_Z: generic formula and O's exact geometric tail") {
  const auto specO = builtin_O().spectrum();
  // exact geometric tail at T = 1/2: sum_{n>=L} 4^-n = 4^-L * 4/3
  for (std::uint64_t L = 1; L <= 64; ++L) {
    const Dyadic bound = tail_bound_Z(specO, temp(1, 2), L);
    const BigRational exact_tail =
        BigRational(4) / 3 / BigRational(pow(BigInt(4), static_cast<unsigned>(L)));
    CHECK(compare(exact_tail, bound) <= 0);  // bound >= exact tail
  }
  CHECK_THROWS_AS(tail_bound_Z(specO, temp(1), 5), ZoneError);
  CHECK_THROWS_AS(tail_bound_Z(specO, temp(5, 4), 5), ZoneError);
  // generic bound at L = 1, T = 1/2 equals 1 for a spectrum with only the
  // trivial Kraft majorant
  struct GenericOnly final : SpectrumRule {
    BigInt multiplicity(std::uint64_t n) const override { return n == 1 ? 1 : 0; }
    std::optional<TailMajorant> majorant() const override {
      return TailMajorant{BigRational(1), BigRational(1), 0, 1};
    }
    std::string formula() const override { return "test"; }
    bool kraft_certified_by_construction() const override { return true; }
  };
  const auto spec = LengthSpectrum::from_rule(std::make_shared<GenericOnly>());
  CHECK(tail_bound_Z(spec, temp(1, 2), 1) == Dyadic(1));
}

TEST_CASE("eval_Z anchors") {
  // Z_B(1) = 3/4 exactly (width 0)
  const auto zB = eval_Z(builtin_B().spectrum(), temp(1), kEps9);
  CHECK(zB.enclosure.is_exact());
  CHECK(zB.enclosure.lo() == Dyadic(BigInt(3), -2));
  // Z_O(1/2) = 1/3
  const auto zO = eval_Z(builtin_O().spectrum(), temp(1, 2), kEps9);
  CHECK(zO.enclosure.contains(BigRational(1, 3)));
  CHECK(zO.enclosure.width() <= Dyadic::power_of_two(-31));
  // Z_O(1) = 1
  const auto zO1 = eval_Z(builtin_O().spectrum(), temp(1), kEps9);
  CHECK(zO1.enclosure.contains(BigRational(1)));
  // O converges at every T > 0, even super-unit
  const auto zO54 = eval_Z(builtin_O().spectrum(), temp(5, 4), kEps9);
  CHECK(zO54.enclosure.strictly_positive());
  // heavy tail has no certificate at T > 1
  CHECK_THROWS_AS(eval_Z(builtin_heavy_tail().spectrum(), temp(5, 4), kEps9),
                  NoConvergenceCertificate);
}

TEST_CASE("eval_F examples") {
  // F_B(1) = 2 - log2 3 = 0.4150374992788438185…
  const auto fB = eval_F(builtin_B().spectrum(), temp(1), kEps9);
  CHECK(fB.enclosure.width() <= Dyadic::power_of_two(-31));
  CHECK(compare(rat("4150374992788439/10000000000000000"), fB.enclosure.lo()) >= 0);
  CHECK(compare(rat("4150374992788438/10000000000000000"), fB.enclosure.hi()) <= 0);
  // F_O(1/2) = (1/2) log2 3 = 0.7924812503605780907…
  const auto fO = eval_F(builtin_O().spectrum(), temp(1, 2), kEps9);
  CHECK(compare(rat("7924812503605781/10000000000000000"), fO.enclosure.lo()) >= 0);
  CHECK(compare(rat("7924812503605780/10000000000000000"), fO.enclosure.hi()) <= 0);
  // singleton domain of length 1: F = 1 exactly at any T
  const auto single = LengthSpectrum::finite({{1, BigInt(1)}});
  for (auto T : {temp(1, 3), temp(1), temp(7, 2)}) {
    const auto f = eval_F(single, T, kEps9);
    CHECK(f.enclosure.is_exact());
    CHECK(f.enclosure.lo() == Dyadic(1));
  }
}

TEST_CASE("eval_E examples") {
  // E_O(1) = 2
  const auto eO = eval_E(builtin_O().spectrum(), temp(1), kEps9);
  CHECK(eO.enclosure.contains(BigRational(2)));
  // E_B(1/2) = 6/5 exactly (rational closed form)
  const auto eB = eval_E(builtin_B().spectrum(), temp(1, 2), kEps9);
  CHECK(eB.enclosure.contains(BigRational(6, 5)));
  // single-length spectrum: E = that length, exactly
  const auto single = LengthSpectrum::finite({{5, BigInt(7)}});
  const auto e = eval_E(single, temp(2, 3), kEps9);
  CHECK(e.enclosure.is_exact());
  CHECK(e.enclosure.lo() == Dyadic(5));
  CHECK_THROWS_AS(eval_E(LengthSpectrum::finite({}), temp(1, 2), kEps9), EmptySpectrum);
}

TEST_CASE("eval_S examples") {
  // singleton: S = 0 exactly
  const auto single = LengthSpectrum::finite({{1, BigInt(1)}});
  const auto s0 = eval_S(single, temp(3, 4), kEps9);
  CHECK(s0.enclosure.is_exact());
  CHECK(s0.enclosure.lo() == Dyadic(0));
  // S_B(1/2) = 0.7219280948873623478…
  const auto sB = eval_S(builtin_B().spectrum(), temp(1, 2), kEps9);
  CHECK(compare(rat("7219280948873624/10000000000000000"), sB.enclosure.lo()) >= 0);
  CHECK(compare(rat("7219280948873623/10000000000000000"), sB.enclosure.hi()) <= 0);
  // S_O(1/2) = 1.0817041659455104852…
  const auto sO = eval_S(builtin_O().spectrum(), temp(1, 2), kEps9);
  CHECK(compare(rat("10817041659455105/10000000000000000"), sO.enclosure.lo()) >= 0);
  CHECK(compare(rat("10817041659455104/10000000000000000"), sO.enclosure.hi()) <= 0);
}

TEST_CASE("closed-form conformance on a small grid (oracle)") {
  for (long long k : {5, 17, 28, 41, 52}) {
    const Temperature T = temp(k, 55);
    const oracle::Rat oT(k, 55);
    const auto ofB = oracle::closed_forms_B(oT, 48);
    const auto ofO = oracle::closed_forms_O(oT, 48);
    const auto specB = builtin_B().spectrum();
    const auto specO = builtin_O().spectrum();
    CHECK(contains_oracle(eval_Z(specB, T, kEps9).enclosure, ofB.Z));
    CHECK(contains_oracle(eval_F(specB, T, kEps9).enclosure, ofB.F));
    CHECK(contains_oracle(eval_E(specB, T, kEps9).enclosure, ofB.E));
    CHECK(contains_oracle(eval_S(specB, T, kEps9).enclosure, ofB.S));
    CHECK(contains_oracle(eval_Z(specO, T, kEps9).enclosure, ofO.Z));
    CHECK(contains_oracle(eval_F(specO, T, kEps9).enclosure, ofO.F));
    CHECK(contains_oracle(eval_E(specO, T, kEps9).enclosure, ofO.E));
    CHECK(contains_oracle(eval_S(specO, T, kEps9).enclosure, ofO.S));
  }
}

TEST_CASE("eval_all cross-identities hold") {
  for (auto machine : {builtin_B(), builtin_O(), builtin_heavy_tail()}) {
    const auto r = eval_all(machine.spectrum(), temp(7, 11), kEps9);
    CHECK(r.Z.enclosure.strictly_positive());
    CHECK(r.Z.enclosure.width() <= Dyadic::power_of_two(-31));
    CHECK(r.F.enclosure.width() <= Dyadic::power_of_two(-31));
    CHECK(r.E.enclosure.width() <= Dyadic::power_of_two(-31));
    CHECK(r.S.enclosure.width() <= Dyadic::power_of_two(-31));
  }
}

TEST_CASE("detect_divergence outcomes") {
  const auto heavy = builtin_heavy_tail().spectrum();
  // crossing M = 10 within L <= 200 (the n = 100 term alone is about 52)
  const auto d10 = detect_divergence(heavy, temp(5, 4), BigRational(10));
  REQUIRE(d10.kind == DivergenceOutcome::Kind::crossed);
  CHECK(d10.length <= 200);
  // minimality: the partial sum strictly below the crossing stays <= M
  const Interval before =
      partial_Z(heavy, temp(5, 4), d10.length - 1, Dyadic::power_of_two(-40));
  CHECK(compare(BigRational(10), before.lo()) >= 0);
  // M = 0: the first populated length
  const auto d0 = detect_divergence(heavy, temp(5, 4), BigRational(0));
  REQUIRE(d0.kind == DivergenceOutcome::Kind::crossed);
  CHECK(d0.length == 1);
  // O converges: certified convergence certificate instead of a crossing
  const auto dO = detect_divergence(builtin_O().spectrum(), temp(5, 4), BigRational(1000000));
  REQUIRE(dO.kind == DivergenceOutcome::Kind::certified_convergent);
  REQUIRE(dO.certificate.has_value());
  CHECK(*dO.certificate <= Dyadic(2));
  CHECK_THROWS_AS(detect_divergence(heavy, temp(1), BigRational(10)), ZoneError);
}

TEST_CASE("monotonicity in T on a coarse grid") {
  const auto machines = {builtin_B(), builtin_O(), builtin_heavy_tail()};
  const std::vector<long long> ks = {11, 22, 33, 44};
  for (const auto& m : machines) {
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
      const Temperature t1 = temp(ks[i], 55), t2 = temp(ks[i + 1], 55);
      const auto z1 = eval_Z(m.spectrum(), t1, kEps9), z2 = eval_Z(m.spectrum(), t2, kEps9);
      CHECK(z1.enclosure.hi() < z2.enclosure.lo());  // Z strictly increasing
      const auto f1 = eval_F(m.spectrum(), t1, kEps9), f2 = eval_F(m.spectrum(), t2, kEps9);
      CHECK(f1.enclosure.lo() > f2.enclosure.hi());  // F strictly decreasing
    }
  }
}
