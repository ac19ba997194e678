#include <doctest.h>

#include <random>

#include "aitherm/compose.hpp"
#include "aitherm/thermo.hpp"

using namespace aitherm;

namespace {

Temperature temp(long long n, long long d = 1) { return Temperature(BigRational(n, d)); }
const Precision kEps{Dyadic::power_of_two(-31)};

Machine truncated_O(int maxlen) {
  Table t;
  std::string p = "1";
  for (int i = 0; i < maxlen; ++i) {
    t[BitString(p)] = BitString();
    p = "0" + p;
  }
  return Machine::table("O_trunc" + std::to_string(maxlen), std::move(t));
}

std::map<std::uint64_t, BigInt> entries(const LengthSpectrum& s) { return s.finite_entries(); }

Machine random_table(std::mt19937_64& rng, int max_leaves) {
  std::vector<std::string> frontier = {""};
  std::uniform_int_distribution<int> coin(0, 2);
  Table t;
  std::uniform_int_distribution<int> outlen(0, 3);
  while (!frontier.empty()) {
    std::string node = frontier.back();
    frontier.pop_back();
    if (!node.empty() && (coin(rng) == 0 || node.size() >= 8)) {
      std::string out;
      for (int i = outlen(rng); i > 0; --i) out += (rng() & 1) ? '1' : '0';
      t[BitString(node)] = BitString(out);
      if (static_cast<int>(t.size()) >= max_leaves) break;
    } else {
      frontier.push_back(node + "0");
      frontier.push_back(node + "1");
    }
  }
  if (t.empty()) t[BitString("1")] = BitString();
  return Machine::table("rand", std::move(t));
}

}  // namespace

TEST_CASE("compose: domains of the named examples") {
  const auto bb = compose({builtin_B(), builtin_B()});
  const auto dom = bb.materialize_domain();
  std::vector<std::string> got;
  for (const auto& s : dom.members()) got.push_back(s.str());
  CHECK(got == std::vector<std::string>{"11", "011", "101", "0101"});
  CHECK(is_prefix_free(dom.members()));

  // single-factor composition is the machine itself
  const auto single = compose({builtin_B()});
  CHECK(entries(single.spectrum()) == entries(builtin_B().spectrum()));
  CHECK(single.materialize_domain().members() == builtin_B().domain().members());

  // |Dom(B o O3)| = 2 * 3
  const auto bo = compose({builtin_B(), truncated_O(3)});
  CHECK(bo.materialize_domain().size() == 6);
}

TEST_CASE("convolve_spectra examples") {
  const auto sB = builtin_B().spectrum();
  const auto sq = convolve_spectra(sB, sB);
  CHECK(entries(sq) == std::map<std::uint64_t, BigInt>{{2, 1}, {3, 2}, {4, 1}});
  // unit shift: {1:1} (*) s shifts s by +1
  const auto shift = convolve_spectra(LengthSpectrum::finite({{1, BigInt(1)}}), sB);
  CHECK(entries(shift) == std::map<std::uint64_t, BigInt>{{2, 1}, {3, 1}});
  // spectrum(B) (*) spectrum(O truncated to 3) = {2:1,3:2,4:2,5:1}
  const auto bo = convolve_spectra(sB, truncated_O(3).spectrum());
  CHECK(entries(bo) == std::map<std::uint64_t, BigInt>{{2, 1}, {3, 2}, {4, 2}, {5, 1}});
}

TEST_CASE("convolution agrees with materialized enumeration") {
  std::mt19937_64 rng(555);
  for (int round = 0; round < 25; ++round) {
    const Machine a = random_table(rng, 12), b = random_table(rng, 12);
    const auto comp = compose({a, b});
    const auto dom = comp.materialize_domain();
    CHECK(is_prefix_free(dom.members()));
    CHECK(entries(spectrum_of(dom)) == entries(comp.spectrum()));
  }
}

TEST_CASE("convolution is associative on finite spectra") {
  std::mt19937_64 rng(881);
  for (int round = 0; round < 25; ++round) {
    const auto a = random_table(rng, 10).spectrum();
    const auto b = random_table(rng, 10).spectrum();
    const auto c = random_table(rng, 10).spectrum();
    const auto left = convolve_spectra(convolve_spectra(a, b), c);
    const auto right = convolve_spectra(a, convolve_spectra(b, c));
    CHECK(entries(left) == entries(right));
  }
}

TEST_CASE("power: spectrum and exact Kraft") {
  const auto p2 = power(builtin_B(), 2);
  CHECK(entries(p2.spectrum()) == std::map<std::uint64_t, BigInt>{{2, 1}, {3, 2}, {4, 1}});
  const auto p1 = power(builtin_B(), 1);
  CHECK(entries(p1.spectrum()) == entries(builtin_B().spectrum()));
  CHECK_THROWS(power(builtin_B(), 0));
  // Kraft of B^3 = (3/4)^3 = 27/64, and the materialized domain confirms it
  const auto p3 = power(builtin_B(), 3);
  const Interval k = kraft_sum(p3.spectrum(), Dyadic(0));
  CHECK(k.is_exact());
  CHECK(k.lo() == Dyadic(BigInt(27), -6));
  const auto dom = p3.materialize_domain();
  CHECK(dom.size() == 8);
  CHECK(entries(spectrum_of(dom)) == entries(p3.spectrum()));
}

TEST_CASE("product law: Z of convolution vs product of Z (incl. rule spectra)") {
  const std::vector<Machine> catalog = {builtin_B(), builtin_O(), builtin_heavy_tail()};
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    for (std::size_t j = i; j < catalog.size(); ++j) {
      const auto conv = convolve_spectra(catalog[i].spectrum(), catalog[j].spectrum());
      for (long long k : {5, 13}) {
        const Temperature T = temp(k, 21);
        const auto za = eval_Z(catalog[i].spectrum(), T, kEps);
        const auto zb = eval_Z(catalog[j].spectrum(), T, kEps);
        const auto zc = eval_Z(conv, T, kEps);
        const Interval prod = imul(za.enclosure, zb.enclosure, 80);
        CHECK(zc.enclosure.intersects(prod));
        CHECK(zc.enclosure.width() <= Dyadic::power_of_two(-31));
      }
    }
  }
}

TEST_CASE("sum laws: F, E, S of convolution vs sums") {
  const auto sB = builtin_B().spectrum();
  const auto sH = builtin_heavy_tail().spectrum();
  const auto conv = convolve_spectra(sB, sH);
  const Temperature T = temp(9, 14);
  const auto check_sum = [&](Quantity q) {
    const auto a = eval_quantity(q, sB, T, kEps);
    const auto b = eval_quantity(q, sH, T, kEps);
    const auto c = eval_quantity(q, conv, T, kEps);
    CHECK(c.enclosure.intersects(iadd(a.enclosure, b.enclosure, 80)));
  };
  check_sum(Quantity::F);
  check_sum(Quantity::E);
  check_sum(Quantity::S);
}

TEST_CASE("composition preserves prefix-freeness (materialized)") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 10; ++round) {
    const auto comp =
        compose({random_table(rng, 8), truncated_O(4), random_table(rng, 6)});
    CHECK(is_prefix_free(comp.materialize_domain().members()));
  }
}

TEST_CASE("vn_family") {
  // stand-in: V_1 with v = c = B gives spectrum(B) (*) spectrum(B)
  const auto v1 = vn_family(builtin_B(), builtin_B(), 1);
  CHECK(entries(v1.spectrum()) == std::map<std::uint64_t, BigInt>{{2, 1}, {3, 2}, {4, 1}});
  CHECK_THROWS(vn_family(builtin_B(), builtin_B(), 0));
  // c must be certified physically reasonable + computable measure
  const auto single = Machine::spectrum_only("single", LengthSpectrum::finite({{5, BigInt(7)}}));
  CHECK_THROWS_AS(vn_family(builtin_B(), single, 1), PredicateFailed);
  // a zero-budget universal machine has an empty discovered domain
  const auto u0 = Machine::universal(0);
  CHECK_THROWS_AS(vn_family(u0, builtin_O(), 1), EmptyDomain);
  // budget-bounded U as v with c = O: product law against Z_O = 1/3 at T = 1/2
  const auto u = Machine::universal(50000);
  const auto v2 = vn_family(u, builtin_O(), 2);
  const auto zu = eval_Z(u.spectrum(), temp(1, 2), kEps);
  const auto zv2 = eval_Z(v2.spectrum(), temp(1, 2), kEps);
  const Interval expected =
      iscale(zu.enclosure, BigRational(1, 9), 80);  // Z_U-lower * (1/3)^2
  CHECK(zv2.enclosure.intersects(expected));
}

TEST_CASE("compose rejects empty domains") {
  CHECK_THROWS_AS(compose({}), EmptyDomain);
  const auto u0 = Machine::universal(0);
  CHECK_THROWS_AS(compose({builtin_B(), u0}), EmptyDomain);
}
