#pragma once

// Error-free transformations under upward rounding.

#include <cassert>
#include <utility>

#include "sosign/format.hpp"

namespace sosign {

/// b - a == c - e exactly, with 0 <= e < c * eps.
template <class T>
struct SubSplit {
  T c;
  T e;
};

/// a * b == sigma^-scale * (c - d) exactly, with d >= 0 and c > tau.
template <class T>
struct ProdSplit {
  T c;
  T d;
  int scale;
};

/// Splits b - a for 0 < a < b with three upward-rounded subtractions.
template <class Arith, class T = typename Arith::value_type>
SubSplit<T> split_sub(T a, T b) {
  assert(0 < a && a < b);
  const T c = Arith::sub(b, a);
  const T d = Arith::sub(b, c);
  const T e = Arith::sub(a, d);
  return {c, e};
}

/// Splits the product of two positive values. When the rounded product does
/// not exceed tau the low part may not be representable, so the smaller
/// operand and then the larger one are scaled by sigma first (both exact).
template <class Arith, class T = typename Arith::value_type>
ProdSplit<T> split_prod(T a, T b) {
  using F = FpFormat<T>;
  assert(a > 0 && b > 0);
  if (b < a) std::swap(a, b);

  const T c0 = Arith::mul(a, b);
  if (c0 > F::tau) return {c0, Arith::fma(-a, b, c0), 0};

  const T sa = Arith::mul(F::sigma, a);
  const T c1 = Arith::mul(sa, b);
  if (c1 > F::tau) return {c1, Arith::fma(-sa, b, c1), 1};

  const T sb = Arith::mul(F::sigma, b);
  const T c2 = Arith::mul(sa, sb);
  assert(c2 > F::tau);
  return {c2, Arith::fma(-sa, sb, c2), 2};
}

}  // namespace sosign
