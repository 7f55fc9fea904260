#include <doctest.h>

#include <bit>
#include <cstring>
#include <limits>
#include <random>

#include "sosign/oracle.hpp"
#include "support.hpp"

using namespace sosign;
using namespace sosign::oracle;
using test::p2;

TEST_CASE("decompose examples") {
  CHECK(decompose(0.5) == Dyadic(mpz_class(1), -1));
  CHECK(decompose(p2<double>(-1074)) == Dyadic(mpz_class(1), -1074));
  CHECK(decompose(-3.0) == Dyadic(mpz_class(-3), 0));
  CHECK(decompose(0.0).mantissa() == 0);
  CHECK(decompose(0.0).exponent() == 0);
  CHECK(decompose(-0.0f).is_zero());
  CHECK(decompose(p2<float>(-149)) == Dyadic::pow2(-149));
  CHECK(decompose(FpFormat<double>::max) == Dyadic(mpz_class(1) << 53, 971) - Dyadic::pow2(971));
  CHECK_THROWS_AS(decompose(std::numeric_limits<double>::infinity()), Error);
  CHECK_THROWS_AS(decompose(std::numeric_limits<float>::quiet_NaN()), Error);
}

TEST_CASE("recompose rejects values that are not representable") {
  CHECK(recompose<double>(Dyadic(1) + Dyadic::pow2(-52)) == 1 + FpFormat<double>::eps);
  CHECK_THROWS_AS(recompose<double>(Dyadic(1) + Dyadic::pow2(-53)), Error);
  CHECK_THROWS_AS(recompose<double>(Dyadic::pow2(1024)), Error);
  CHECK_THROWS_AS(recompose<double>(Dyadic::pow2(-1075)), Error);
  CHECK_THROWS_AS(recompose<float>(Dyadic(1) + Dyadic::pow2(-24)), Error);
  CHECK(recompose<float>(Dyadic(-3)) == -3.0f);
  CHECK(recompose<double>(Dyadic()) == 0.0);
}

TEST_CASE("binary32 round trip over every mantissa of selected binades") {
  for (std::uint32_t biased : {0u, 1u, 127u, 200u, 254u}) {
    for (std::uint32_t frac = 0; frac < (1u << 23); ++frac) {
      for (std::uint32_t sign : {0u, 1u}) {
        const std::uint32_t bits = (sign << 31) | (biased << 23) | frac;
        const float x = std::bit_cast<float>(bits);
        if (x == 0) continue;
        const float y = recompose<float>(decompose(x));
        if (std::bit_cast<std::uint32_t>(y) != bits) {
          FAIL("round trip failed for bits " << bits);
        }
      }
    }
  }
}

TEST_CASE("binary64 round trip on random bit patterns") {
  Rng rng(71);
  for (int i = 0; i < 10'000'000; ++i) {
    const double x = random_bits<double>(rng);
    if (x == 0) continue;
    const double y = recompose<double>(decompose(x));
    if (std::bit_cast<std::uint64_t>(y) != std::bit_cast<std::uint64_t>(x)) FAIL("round trip failed for " << x);
  }
}

TEST_CASE("exact sums and signs") {
  constexpr double eps = FpFormat<double>::eps;
  CHECK(oracle_sign(SumOfProducts<double>{{2, 3}, {-5}}) == 1);
  CHECK(exact_value(SumOfProducts<double>{{1 + eps, 1 - eps}, {-1}}) == -Dyadic::pow2(-104));
  CHECK(oracle_sign(SumOfProducts<double>{{1 + eps, 1 - eps}, {-1}}) == -1);
  CHECK(oracle_sign(SumOfProducts<double>{{0}}) == 0);
  CHECK(oracle_sign(SumOfProducts<double>{}) == 0);
  CHECK(exact_value(SumOfProducts<double>{{p2<double>(-1074), p2<double>(-1074)}, {p2<double>(1023), p2<double>(1023)}}) ==
        Dyadic::pow2(-2148) + Dyadic::pow2(2046));
  CHECK(exact_value(ScaledNumber<double>{p2<double>(-51), 1}) == Dyadic::pow2(-1074));
  CHECK(exact_value(ScaledNumber<float>{3, 2}) == Dyadic(3).scaled(-254));
}

TEST_CASE("random source is portable") {
  std::mt19937_64 reference;
  reference.discard(9999);
  CHECK(reference() == 9981545732273789042ULL);
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
  Rng c(9);
  for (int i = 0; i < 10000; ++i) {
    const auto v = c.between(-3, 3);
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
  }
  CHECK(c.below(1) == 0);
}

TEST_CASE("random_value hits the requested binade") {
  Rng rng(72);
  for (int e : {-1074, -1060, -1023, -1022, 0, 1023}) {
    for (int i = 0; i < 100; ++i) {
      const double x = random_value<double>(rng, e, false);
      REQUIRE(x > 0);
      REQUIRE(std::ilogb(x) == e);
    }
  }
}

TEST_CASE("generator contracts") {
  const auto collinear = generate<double>(Family::collinear, 3, 1);
  CHECK(collinear.size() == 3);
  for (const auto& c : collinear) CHECK(c.expected_sign == 0);

  for (const auto& c : generate<double>(Family::underflow, 300, 2)) {
    bool tiny = false;
    for (const auto& t : c.expression.terms) {
      const Dyadic p = exact_value(t);
      tiny = tiny || (!p.is_zero() && p.abs() < decompose(FpFormat<double>::nu));
    }
    CHECK(tiny);
  }

  const auto r1 = generate<float>(Family::random, 200, 3);
  const auto r2 = generate<float>(Family::random, 200, 3);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].expression.terms.size() == r2[i].expression.terms.size());
    for (std::size_t t = 0; t < r1[i].expression.terms.size(); ++t) {
      const auto& x = r1[i].expression.terms[t].factors;
      const auto& y = r2[i].expression.terms[t].factors;
      REQUIRE(x.size() == y.size());
      CHECK(std::memcmp(x.data(), y.data(), x.size() * sizeof(float)) == 0);
    }
  }
  CHECK(generate<float>(Family::random, 5, 4)[0].expression != r1[0].expression);
}

TEST_CASE_TEMPLATE("generated cases are self-consistent", T, float, double) {
  for (Family f : {Family::collinear, Family::near_collinear, Family::underflow, Family::cancellation,
                   Family::random, Family::separated}) {
    int signs[3] = {};
    for (const auto& c : generate<T>(f, 1000, 73)) {
      REQUIRE(c.family == f);
      REQUIRE(c.expected_sign == oracle_sign(c.expression));
      REQUIRE(magnitudes_safe(c.expression));
      if (f == Family::separated) REQUIRE(well_separated(c.expression));
      ++signs[c.expected_sign + 1];
    }
    if (f == Family::cancellation || f == Family::near_collinear || f == Family::underflow) {
      CHECK(signs[0] > 0);
      CHECK(signs[1] > 0);
      CHECK(signs[2] > 0);
    }
  }
  CHECK(parse_family("near-collinear") == Family::near_collinear);
  CHECK(to_string(Family::underflow) == "underflow");
  CHECK_THROWS_AS(parse_family("gaussian"), Error);
}

TEST_CASE("separation certificate") {
  CHECK(well_separated(SumOfProducts<double>{{2, 3}, {-5}}));
  CHECK_FALSE(well_separated(SumOfProducts<double>{{1}, {-1}}));
  CHECK_FALSE(well_separated(SumOfProducts<double>{{1 + FpFormat<double>::eps, 1}, {-1}}));
  CHECK_FALSE(well_separated(SumOfProducts<double>{{p2<double>(-1030)}}));
  CHECK(magnitudes_safe(SumOfProducts<double>{{p2<double>(500), p2<double>(500)}}));
  CHECK_FALSE(magnitudes_safe(SumOfProducts<double>{{p2<double>(600), p2<double>(500)}}));
}
