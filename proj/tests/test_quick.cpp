#include <doctest.h>

#include "sosign/oracle.hpp"
#include "sosign/quick_sign.hpp"
#include "sosign/rounding.hpp"
#include "sosign/sign.hpp"
#include "support.hpp"

using namespace sosign;
using test::exact;

using A = EmulatedRoundUp<double>;

TEST_CASE("quick_prod examples") {
  auto b = quick_prod<A>(ProductTerm<double>{0, 7, 9});
  CHECK(b.d == 0);
  CHECK(b.u == 0);
  b = quick_prod<A>(ProductTerm<double>{2, 3});
  CHECK(b.d == -6);
  CHECK(b.u == 6);
  b = quick_prod<A>(ProductTerm<double>{-5});
  CHECK(b.d == 5);
  CHECK(b.u == -5);
  b = quick_prod<A>(ProductTerm<double>{-2, -3});
  CHECK(b.d == -6);
  CHECK(b.u == 6);
}

TEST_CASE("quick_sign examples") {
  CHECK(quick_sign<A>(SumOfProducts<double>{{2, 3}, {-5}}) == SignResult::positive);
  CHECK(quick_sign<A>(SumOfProducts<double>{{1}, {-1}}) == SignResult::inconclusive);
  CHECK(quick_sign<A>(SumOfProducts<double>{{0}}) == SignResult::inconclusive);
  CHECK(quick_sign<A>(SumOfProducts<double>{{2, -3}}) == SignResult::negative);
  CHECK(quick_sign<A>(SumOfProducts<double>{}) == SignResult::inconclusive);
  CHECK(evaluate_quick(SumOfProducts<float>{{2, 3}, {-5}}) == SignResult::positive);
  CHECK(to_string(SignResult::inconclusive) == "inconclusive");
}

TEST_CASE_TEMPLATE("bounds enclose the exact product", T, float, double) {
  test::Rng rng(41);
  using F = FpFormat<T>;
  for (int i = 0; i < 50000; ++i) {
    ProductTerm<T> term;
    const int n = static_cast<int>(rng.between(1, 4));
    for (int j = 0; j < n; ++j) {
      term.factors.push_back(oracle::random_value<T>(rng, static_cast<int>(rng.between(F::log2_min_sub / n, F::log2_sigma / n))));
    }
    const auto [d, u] = quick_prod<EmulatedRoundUp<T>>(term);
    const Dyadic p = oracle::exact_value(term);
    REQUIRE(-exact(d) <= p);
    REQUIRE(p <= exact(u));
  }
}

TEST_CASE_TEMPLATE("conclusive answers are right", T, float, double) {
  for (auto family : {oracle::Family::near_collinear, oracle::Family::cancellation,
                      oracle::Family::underflow, oracle::Family::random}) {
    for (const auto& c : oracle::generate<T>(family, 2000, 42)) {
      SignResult r;
      try {
        r = evaluate_quick(c.expression);
      } catch (const OverflowError&) {
        continue;
      }
      if (r == SignResult::positive) REQUIRE(c.expected_sign == 1);
      if (r == SignResult::negative) REQUIRE(c.expected_sign == -1);
    }
  }
}

TEST_CASE_TEMPLATE("well-separated sums are always decided", T, float, double) {
  for (const auto& c : oracle::generate<T>(oracle::Family::separated, 5000, 43)) {
    const auto r = evaluate_quick(c.expression);
    REQUIRE(r != SignResult::inconclusive);
    REQUIRE((r == SignResult::positive ? 1 : -1) == c.expected_sign);
  }
}
