#pragma once

#include <cmath>
#include <limits>

#include "sosign/dyadic.hpp"
#include "sosign/format.hpp"
#include "sosign/oracle.hpp"

namespace test {

using sosign::Dyadic;
using sosign::FpFormat;
using sosign::oracle::Rng;

template <class T>
T p2(int k) {
  return std::ldexp(T(1), k);
}

template <class T>
Dyadic exact(T x) {
  return sosign::oracle::decompose(x);
}

/// Operands covering every binade, subnormals, edge values and raw bit
/// patterns.
template <class T>
T any_value(Rng& rng) {
  using F = FpFormat<T>;
  switch (rng.below(10)) {
    case 5: return sosign::oracle::random_bits<T>(rng);
    case 6: return sosign::oracle::random_value<T>(rng, static_cast<int>(rng.between(-2, 2)));
    case 7: return (rng.coin() ? 1 : -1) * p2<T>(static_cast<int>(rng.between(F::log2_min_sub, F::log2_sigma)));
    case 8:
      return sosign::oracle::random_value<T>(rng, static_cast<int>(rng.between(F::log2_min_sub, F::log2_nu - 1)));
    case 9: {
      const T special[] = {T(0), F::max, F::nu, F::min_sub, T(1), F::eps, F::tau, F::sigma};
      const T x = special[rng.below(8)];
      return rng.coin() ? -x : x;
    }
    default:
      return sosign::oracle::random_value<T>(rng, static_cast<int>(rng.between(F::log2_min_sub, F::log2_sigma)));
  }
}

/// Positive value with leading bit 2^e.
template <class T>
T positive(Rng& rng, int e) {
  return sosign::oracle::random_value<T>(rng, e, false);
}

}  // namespace test
