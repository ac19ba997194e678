#include <doctest.h>

#include <random>

#include "aitherm/randomness.hpp"

using namespace aitherm;

namespace {

// Independent oracle: base-2 long division of p/q in [0,1).
std::string long_division_bits(long long p, long long q, std::uint64_t n) {
  std::string out;
  long long num = p % q;
  if (num < 0) num += q;
  for (std::uint64_t i = 0; i < n; ++i) {
    num *= 2;
    if (num >= q) {
      out += '1';
      num -= q;
    } else {
      out += '0';
    }
  }
  return out;
}

}  // namespace

TEST_CASE("rest_bits on rationals: named examples") {
  CHECK(rest_bits(RealSource::rational(BigRational(5, 8)), 6).str() == "101000");
  CHECK(rest_bits(RealSource::rational(BigRational(1, 3)), 4).str() == "0101");
  CHECK(rest_bits(RealSource::rational(BigRational(0)), 5).str() == "00000");
  CHECK(rest_bits(RealSource::rational(BigRational(0)), 0).str() == "");
  // the integer part is dropped: 5/8 and 13/8 share fractional bits
  CHECK(rest_bits(RealSource::rational(BigRational(13, 8)), 6).str() == "101000");
  // negative alpha: -3/8 - floor(-3/8) = 5/8
  CHECK(rest_bits(RealSource::rational(BigRational(-3, 8)), 6).str() == "101000");
}

TEST_CASE("rest_bits matches long division on 1/3 at 32 bits") {
  CHECK(rest_bits(RealSource::rational(BigRational(1, 3)), 32).str() ==
        long_division_bits(1, 3, 32));
}

TEST_CASE("rest_bits round-trip: truncation lies within 2^-n below alpha") {
  std::mt19937_64 rng(2468);
  std::uniform_int_distribution<long long> num(-500, 500);
  std::uniform_int_distribution<long long> den(1, 500);
  for (int i = 0; i < 200; ++i) {
    const BigRational alpha(num(rng), den(rng));
    const std::uint64_t n = 1 + (rng() % 24);
    const BitString bits = rest_bits(RealSource::rational(alpha), n);
    BigRational value = 0;
    for (std::uint64_t j = 0; j < n; ++j)
      if (bits.bit(j) == '1') value += BigRational(1, BigInt(1) << static_cast<unsigned>(j + 1));
    const BigRational frac = alpha - floor_div(numerator(alpha), denominator(alpha));
    CHECK(value <= frac);
    CHECK(frac - value < BigRational(1, BigInt(1) << static_cast<unsigned>(n)));
  }
}

TEST_CASE("dyadic trailing-zero convention on random dyadics") {
  std::mt19937_64 rng(13579);
  for (int i = 0; i < 100; ++i) {
    const unsigned j = 1 + (rng() % 20);
    const long long k = static_cast<long long>(rng() % (1ull << j));
    const BigRational alpha(k, BigInt(1) << j);
    const std::uint64_t n = j + 1 + (rng() % 12);
    const std::string bits = rest_bits(RealSource::rational(alpha), n).str();
    CHECK(bits.substr(j) == std::string(n - j, '0'));  // terminating expansion
  }
}

TEST_CASE("rest_bits on enclosure streams") {
  // sqrt(1/2) as a stream via bisection-free shrinking brackets
  const auto stream = [](std::int64_t bits) {
    // crude but nested: scale integer sqrt of 2^(2b-1)
    const BigInt scale = BigInt(1) << static_cast<unsigned>(2 * bits);
    const BigInt target = scale / 2;
    BigInt lo = 0, hi = BigInt(1) << static_cast<unsigned>(bits);
    while (hi - lo > 1) {
      const BigInt mid = (lo + hi) / 2;
      if (mid * mid <= target) lo = mid; else hi = mid;
    }
    return Interval(Dyadic(lo, -bits), Dyadic(hi, -bits));
  };
  const RealSource alpha = RealSource::enclosure_stream(stream);
  // sqrt(0.5) = 0.10110101000001001111...
  CHECK(rest_bits(alpha, 10).str() == "1011010100");
  // a stream converging to a dyadic boundary (1/2) cannot separate
  const auto half = [](std::int64_t bits) {
    return Interval(Dyadic(BigInt(1), -1) - Dyadic::power_of_two(-bits - 1),
                    Dyadic(BigInt(1), -1) + Dyadic::power_of_two(-bits - 1));
  };
  CHECK_THROWS_AS(rest_bits(RealSource::enclosure_stream(half, 256), 3), PrecisionExhausted);
}

TEST_CASE("compression_profile on table machines") {
  Table t;
  t[BitString("1")] = BitString();
  const auto m1 = Machine::table("m1", std::move(t));
  const auto p1 = compression_profile(m1, RealSource::rational(BigRational(0)), 1, 4, 100);
  REQUIRE(p1.rows.size() == 1);
  CHECK(!p1.rows[0].h_upper);  // output "0" is not produced by this machine

  Table t2;
  t2[BitString("1")] = BitString();
  t2[BitString("01")] = BitString("0");
  t2[BitString("001")] = BitString("00");
  const auto m2 = Machine::table("m2", std::move(t2));
  const auto p2 = compression_profile(m2, RealSource::rational(BigRational(0)), 2, 4, 100);
  REQUIRE(p2.rows.size() == 2);
  CHECK(p2.rows[0].h_upper == 2);
  CHECK(*p2.rows[0].ratio() == BigRational(2));
  CHECK(p2.rows[1].h_upper == 3);
  CHECK(*p2.rows[1].ratio() == BigRational(3, 2));

  const auto p0 = compression_profile(m2, RealSource::rational(BigRational(0)), 0, 4, 100);
  CHECK(p0.rows.empty());
}

TEST_CASE("profile h_upper never increases with a larger window or budget") {
  const auto U = Machine::universal(0);
  const RealSource third = RealSource::rational(BigRational(1, 3));
  const auto small = compression_profile(U, third, 3, 7, 50);
  const auto large = compression_profile(U, third, 3, 9, 5000);
  for (std::size_t i = 0; i < 3; ++i) {
    if (small.rows[i].h_upper) {
      REQUIRE(large.rows[i].h_upper);
      CHECK(*large.rows[i].h_upper <= *small.rows[i].h_upper);
    }
  }
}

TEST_CASE("deficiency_probe") {
  CompressionProfile p;
  p.rows = {{1, 2}, {2, 3}};
  CHECK(deficiency_probe(p, BigRational(1)) == BigRational(-1));  // max(1-2, 2-3)
  const auto at0 = deficiency_probe(p, BigRational(0));
  REQUIRE(at0);
  CHECK(*at0 <= 0);
  p.rows.push_back({3, std::nullopt});
  CHECK(!deficiency_probe(p, BigRational(1)));  // undefined with a NotFound row
  CHECK_THROWS(deficiency_probe(p, BigRational(3, 2)));
  CompressionProfile empty;
  CHECK(!deficiency_probe(empty, BigRational(1, 2)));
}
