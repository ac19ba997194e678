#include <doctest.h>

#include <algorithm>
#include <random>

#include "aitherm/bitstring.hpp"
#include "aitherm/rules.hpp"
#include "aitherm/spectrum.hpp"

using namespace aitherm;

namespace {

std::vector<BitString> strs(std::initializer_list<const char*> xs) {
  std::vector<BitString> v;
  for (const char* x : xs) v.emplace_back(x);
  return v;
}

// Random prefix-free set: leaves of a random binary code tree.
std::vector<BitString> random_prefix_free(std::mt19937_64& rng, int max_leaves) {
  std::vector<std::string> frontier = {""};
  std::uniform_int_distribution<int> coin(0, 2);
  std::vector<BitString> leaves;
  while (!frontier.empty() && static_cast<int>(leaves.size()) < max_leaves) {
    std::string node = frontier.back();
    frontier.pop_back();
    if (!node.empty() && coin(rng) == 0) {
      leaves.emplace_back(node);
    } else if (node.size() < 12) {
      frontier.push_back(node + "0");
      frontier.push_back(node + "1");
    } else {
      leaves.emplace_back(node);
    }
  }
  return leaves;
}

}  // namespace

TEST_CASE("bitstring basics") {
  CHECK(BitString().length() == 0);
  CHECK(BitString("01").length() == 2);
  CHECK(BitString("01").str() == "01");
  CHECK_THROWS_AS(BitString("012"), InvalidBitString);
  CHECK(BitString("0").is_prefix_of(BitString("01")));
  CHECK(!BitString("1").is_prefix_of(BitString("01")));
  CHECK(BitString().is_prefix_of(BitString("0")));
  CHECK((BitString("10") + BitString("1")).str() == "101");
  CHECK(canonical_less(BitString("1"), BitString("00")));   // shorter first
  CHECK(canonical_less(BitString("00"), BitString("01")));  // then lexicographic
}

TEST_CASE("is_prefix_free on the named examples") {
  CHECK(is_prefix_free(strs({"1", "01"})));        // Dom B
  CHECK(!is_prefix_free(strs({"0", "01"})));       // 0 is a prefix of 01
  CHECK(is_prefix_free(strs({})));                 // vacuous
  CHECK(!is_prefix_free(strs({"01", "01"})));      // duplicates violate
  CHECK(is_prefix_free(strs({""})));               // {lambda} alone is fine
  CHECK(!is_prefix_free(strs({"", "0"})));         // lambda prefixes everything
}

TEST_CASE("is_prefix_free is order-insensitive") {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 50; ++round) {
    auto set = random_prefix_free(rng, 40);
    const bool base = is_prefix_free(set);
    CHECK(base);
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      std::shuffle(set.begin(), set.end(), rng);
      CHECK(is_prefix_free(set) == base);
    }
    // damage it: duplicate one element
    if (!set.empty()) {
      auto damaged = set;
      damaged.push_back(damaged.front());
      CHECK(!is_prefix_free(damaged));
    }
  }
}

TEST_CASE("spectrum_of the named examples") {
  const auto sB = spectrum_of(PrefixSet(strs({"1", "01"})));
  CHECK(sB.finite_entries() == std::map<std::uint64_t, BigInt>{{1, 1}, {2, 1}});
  const auto sO3 = spectrum_of(PrefixSet(strs({"1", "01", "001"})));
  CHECK(sO3.finite_entries() == std::map<std::uint64_t, BigInt>{{1, 1}, {2, 1}, {3, 1}});
  const auto sLambda = spectrum_of(PrefixSet(strs({""})));
  CHECK(sLambda.finite_entries().empty());  // lambda is not indexed
}

TEST_CASE("spectrum_of total multiplicity equals |S| without lambda") {
  std::mt19937_64 rng(777);
  for (int round = 0; round < 40; ++round) {
    const auto set = random_prefix_free(rng, 60);
    const PrefixSet ps(set);
    const auto spec = spectrum_of(ps);
    CHECK(spec.total_count() == BigInt(set.size()));
  }
}

TEST_CASE("kraft_sum: exact finite values") {
  const auto sB = spectrum_of(PrefixSet(strs({"1", "01"})));
  const Interval k = kraft_sum(sB, Dyadic(0));
  CHECK(k.is_exact());
  CHECK(k.lo() == Dyadic(BigInt(3), -2));  // 3/4
  const Interval empty = kraft_sum(LengthSpectrum::finite({}), Dyadic(0));
  CHECK(empty.is_exact());
  CHECK(empty.lo() == Dyadic(0));
}

TEST_CASE("kraft_sum <= 1 exactly for random finite prefix sets") {
  std::mt19937_64 rng(31337);
  for (int round = 0; round < 40; ++round) {
    const PrefixSet ps(random_prefix_free(rng, 80));
    const Interval k = kraft_sum(spectrum_of(ps), Dyadic(0));
    CHECK(k.hi() <= Dyadic(1));
  }
}

TEST_CASE("kraft_sum of the all-ones rule encloses 1") {
  const auto spec = LengthSpectrum::from_rule(std::make_shared<OnesRule>());
  const Interval k = kraft_sum(spec, Dyadic::power_of_two(-30));
  CHECK(k.contains(BigRational(1)));
  CHECK(k.width() <= Dyadic::power_of_two(-30));
}

TEST_CASE("rule spectrum without a certified majorant: TailUnbounded") {
  struct BareRule final : SpectrumRule {
    BigInt multiplicity(std::uint64_t) const override { return 1; }
    std::optional<TailMajorant> majorant() const override { return std::nullopt; }
    std::string formula() const override { return "m(n) = 1 (no majorant)"; }
    bool kraft_certified_by_construction() const override { return true; }  // skip the check
  };
  const auto spec = LengthSpectrum::from_rule(std::make_shared<BareRule>());
  CHECK_THROWS_AS(kraft_sum(spec, Dyadic::power_of_two(-10)), TailUnbounded);
}

TEST_CASE("finite spectrum validation") {
  CHECK_THROWS_AS(LengthSpectrum::finite({{0, BigInt(1)}}), InvalidSpectrum);
  CHECK_THROWS_AS(LengthSpectrum::finite({{2, BigInt(5)}}), InvalidSpectrum);  // 5 > 2^2
  CHECK_THROWS_AS(LengthSpectrum::finite({{1, BigInt(2)}, {2, BigInt(1)}}),
                  InvalidSpectrum);  // Kraft 5/4 > 1
  const auto ok = LengthSpectrum::finite({{1, BigInt(1)}, {2, BigInt(1)}});
  CHECK(ok.multiplicity(1) == 1);
  CHECK(ok.multiplicity(3) == 0);
}

TEST_CASE("heavy-tail rule prefix and majorant validity") {
  FloorPowOverPolyRule rule(2, 2);
  // floor(2^n/(2 n^2)) for n = 1..8: 1,0,0,0,0,0,1,2
  CHECK(rule.multiplicity(1) == 1);
  for (std::uint64_t n = 2; n <= 6; ++n) CHECK(rule.multiplicity(n) == 0);
  CHECK(rule.multiplicity(7) == 1);
  CHECK(rule.multiplicity(8) == 2);
  const auto maj = rule.majorant();
  REQUIRE(maj);
  // m(n) <= c 2^(g n) n^d holds on a long prefix
  for (std::uint64_t n = 1; n <= 300; ++n) {
    const BigRational bound = maj->c * BigRational(BigInt(1) << static_cast<unsigned>(n)) /
                              BigRational(pow(BigInt(n), 2));
    CHECK(BigRational(rule.multiplicity(n)) <= bound);
  }
  CHECK_THROWS_AS(FloorPowOverPolyRule(2, 1), InvalidSpectrum);
}

TEST_CASE("power series tail bound sanity") {
  // sum_{n>=L} 2^-n = 2^(1-L), and the bound is exact for dyadic ratios
  const auto t = power_series_tail_upper(5, 0, BigRational(-1), 64);
  REQUIRE(t);
  CHECK(*t == Dyadic::power_of_two(-4));
  // beta = 0 diverges unless e <= -2
  CHECK(!power_series_tail_upper(5, 0, BigRational(0), 64));
  CHECK(power_series_tail_upper(5, -2, BigRational(0), 64));
  // beta > 0 never converges
  CHECK(!power_series_tail_upper(5, -9, BigRational(1, 2), 64));
}
