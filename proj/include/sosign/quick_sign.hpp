#pragma once

// Interval filter: bounds every product from both sides with upward rounding
// and certifies the sign of the sum when the bounds do not straddle zero.

#include <string_view>
#include <utility>

#include "sosign/expr.hpp"

namespace sosign {

enum class SignResult { negative, zero, positive, inconclusive };

std::string_view to_string(SignResult r);

/// -d <= p <= u for the exact product p.
template <class T>
struct ProductBounds {
  T d;
  T u;
};

template <class Arith, class T = typename Arith::value_type>
ProductBounds<T> quick_prod(const ProductTerm<T>& term) {
  T d = -1;
  T u = 1;
  for (T a : term.factors) {
    if (a <= 0) {
      if (a == 0) return {T(0), T(0)};
      // a p = (-a)(-p) and -u <= -p <= d
      std::swap(d, u);
      a = -a;
    }
    d = Arith::mul(d, a);
    u = Arith::mul(u, a);
  }
  return {d, u};
}

/// Never reports zero: when the accumulated bounds are not conclusive the
/// answer is inconclusive, even for an exactly cancelling sum.
template <class Arith, class T = typename Arith::value_type>
SignResult quick_sign(const SumOfProducts<T>& s) {
  T su = 0;  // su >= S
  T sd = 0;  // sd >= -S
  for (const auto& term : s.terms) {
    const auto [d, u] = quick_prod<Arith>(term);
    su = Arith::add(su, u);
    sd = Arith::add(sd, d);
  }
  if (sd < 0) return SignResult::positive;
  if (su < 0) return SignResult::negative;
  return SignResult::inconclusive;
}

}  // namespace sosign
