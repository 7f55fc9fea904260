#include <doctest.h>

#include "sosign/eft.hpp"
#include "sosign/rounding.hpp"
#include "support.hpp"

using namespace sosign;
using test::exact;
using test::p2;

TEST_CASE("split_sub examples") {
  using A = EmulatedRoundUp<double>;
  auto r = split_sub<A>(p2<double>(-53), 1.0);
  CHECK(r.c == 1 - p2<double>(-53));
  CHECK(r.e == 0);
  r = split_sub<A>(3 * p2<double>(-55), 1.0);
  CHECK(r.c == 1);
  CHECK(r.e == 3 * p2<double>(-55));
  r = split_sub<A>(1.0, 2.0);
  CHECK(r.c == 1);
  CHECK(r.e == 0);
}

TEST_CASE("split_prod examples") {
  using A = EmulatedRoundUp<double>;
  constexpr double eps = FpFormat<double>::eps;
  auto r = split_prod<A>(1.0, 3.5);
  CHECK(r.c == 3.5);
  CHECK(r.d == 0);
  CHECK(r.scale == 0);
  r = split_prod<A>(1 + eps, 1 + eps);
  CHECK(r.c == 1 + 3 * eps);
  CHECK(r.d == eps - eps * eps);
  CHECK(r.scale == 0);
  r = split_prod<A>(p2<double>(-537), p2<double>(-537));
  CHECK(r.c == p2<double>(-51));
  CHECK(r.d == 0);
  CHECK(r.scale == 1);
  // both operands tiny: the ladder needs the second rung
  r = split_prod<A>(p2<double>(-1070), p2<double>(-1000));
  CHECK(r.scale == 2);
  CHECK(exact(r.c).scaled(-2 * 1023) - exact(r.d).scaled(-2 * 1023) == Dyadic::pow2(-2070));
  // argument order does not matter
  const auto s = split_prod<A>(3.0, 1 + eps);
  const auto t = split_prod<A>(1 + eps, 3.0);
  CHECK(s.c == t.c);
  CHECK(s.d == t.d);
}

template <class Arith>
void sub_property(std::uint64_t seed, int count) {
  using T = typename Arith::value_type;
  using F = FpFormat<T>;
  test::Rng rng(seed);
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    T a = test::positive<T>(rng, static_cast<int>(rng.between(F::log2_min_sub, F::log2_sigma)));
    T b = rng.coin() ? test::positive<T>(rng, static_cast<int>(rng.between(F::log2_min_sub, F::log2_sigma)))
                     : std::nextafter(a, F::max) * (rng.coin() ? 1 : 2);
    if (!std::isfinite(b)) continue;
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    const auto [c, e] = split_sub<Arith>(a, b);
    const bool ok = exact(b) - exact(a) == exact(c) - exact(e) && e >= 0 &&
                    exact(e) < exact(c) * exact(F::eps);
    if (!ok) ++failures;
  }
  CHECK(failures == 0);
}

template <class Arith>
void prod_property(std::uint64_t seed, int count) {
  using T = typename Arith::value_type;
  using F = FpFormat<T>;
  test::Rng rng(seed);
  int failures = 0;
  int scales[3] = {};
  for (int i = 0; i < count; ++i) {
    const int ea = static_cast<int>(rng.between(F::log2_min_sub, F::log2_sigma));
    const int eb = static_cast<int>(rng.between(F::log2_min_sub, std::min(F::log2_sigma, F::log2_sigma - 1 - ea)));
    const T a = test::positive<T>(rng, ea);
    const T b = test::positive<T>(rng, eb);
    if (exact(a) * exact(b) > exact(F::max)) continue;
    const auto r = split_prod<Arith>(a, b);
    ++scales[r.scale];
    const int k = r.scale * F::log2_sigma;
    const bool ok = exact(a) * exact(b) == exact(r.c).scaled(-k) - exact(r.d).scaled(-k) && r.d >= 0 &&
                    r.c > F::tau;
    if (!ok) ++failures;
    if (Arith::mul(a, b) <= F::tau) CHECK(r.scale > 0);
  }
  CHECK(failures == 0);
  CHECK(scales[0] > 0);
  CHECK(scales[1] > 0);
  CHECK(scales[2] > 0);
}

TEST_CASE_TEMPLATE("split_sub is exact", T, float, double) {
  sub_property<EmulatedRoundUp<T>>(21, 100000);
}

TEST_CASE_TEMPLATE("split_prod is exact on every rung", T, float, double) {
  prod_property<EmulatedRoundUp<T>>(22, 100000);
}
