#pragma once

// Exact sign of a sum of products.
//
// Every product is split into scaled numbers whose signed sum is the exact
// product; their magnitudes go to a positive and a negative heap. The loop
// then repeatedly pops the two maxima and either certifies the sign (when one
// side dominates the whole other heap) or replaces them by the exact split of
// their difference.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sosign/eft.hpp"
#include "sosign/expr.hpp"
#include "sosign/scaled.hpp"

namespace sosign {

template <class T>
struct SplitOutput {
  std::vector<ScaledNumber<T>> pos_parts;
  std::vector<ScaledNumber<T>> neg_parts;
};

/// How the robust loop reached its answer.
enum class RobustExit {
  heaps_empty,      // both heaps drained, sign 0
  one_heap_empty,   // the other side has nothing left to cancel
  exponent_gap,     // maxima at least two powers of sigma apart
  size_guard,       // one maximum exceeds heap size times the other
};

std::string_view to_string(RobustExit e);

/// Hooks for instrumented runs; the default does nothing.
template <class T>
class RobustObserver {
 public:
  virtual ~RobustObserver() = default;
  /// Heaps after the products were split, before the loop.
  virtual void on_filled(const MagnitudeHeap<T>& /*pos*/, const MagnitudeHeap<T>& /*neg*/) {}
  /// Heaps at the head of every loop iteration.
  virtual void on_iteration(const MagnitudeHeap<T>& /*pos*/, const MagnitudeHeap<T>& /*neg*/) {}
  /// A popped t field was multiplied by 1/sigma; inexact when the exact
  /// quotient was not representable.
  virtual void on_rescale(bool /*inexact*/) {}
  /// The difference of t fields was split; larger is the bigger t field.
  virtual void on_difference(T /*larger*/, T /*smaller*/, T /*c*/, T /*e*/) {}
  virtual void on_exit(int /*sign*/, RobustExit /*how*/) {}
};

namespace detail {

template <class Arith, class T>
void push_part(std::vector<ScaledNumber<T>>& out, T t, int exp) {
  if (t > 0) out.push_back(normalize<Arith>(t, exp));
}

/// n > count (x) p, or false when the rounded product overflows (the exact
/// product then exceeds every finite n).
template <class Arith, class T>
bool dominates(T n, std::size_t count, T p) {
  try {
    return n > Arith::mul(static_cast<T>(count), p);
  } catch (const OverflowError&) {
    return false;
  }
}

}  // namespace detail

/// Splits a product into scaled numbers whose positive parts minus negative
/// parts equal the exact product. A zero factor yields no parts.
template <class Arith, class T = typename Arith::value_type>
SplitOutput<T> split(const ProductTerm<T>& term) {
  using F = FpFormat<T>;
  struct Part {
    T t;
    int exp;
    bool negative;
  };

  SplitOutput<T> out;
  if (term.factors.empty()) return out;
  bool negative = false;
  for (T a : term.factors) {
    if (a == 0) return out;
    negative ^= a < 0;
  }

  std::vector<Part> parts;
  std::vector<Part> next;
  {
    const auto s = normalize<Arith>(std::fabs(term.factors.front()), 0);
    parts.push_back({s.t, s.exp, false});
  }
  for (std::size_t j = 1; j < term.factors.size(); ++j) {
    const T b = std::fabs(term.factors[j]);
    next.clear();
    for (const Part& p : parts) {
      T factor = b;
      int exp = p.exp;
      // t may be as large as sigma*tau while its value is tiny; pre-scale b so
      // the scaled product cannot overflow.
      if (exp > 0 && b >= 2 &&
          std::ilogb(p.t) + std::ilogb(b) >= std::numeric_limits<T>::max_exponent - 2) {
        factor = Arith::mul(F::sigma_inv, b);
        --exp;
      }
      const auto ps = split_prod<Arith>(p.t, factor);
      const auto c = normalize<Arith>(ps.c, exp + ps.scale);
      next.push_back({c.t, c.exp, p.negative});
      if (ps.d > 0) {
        const auto d = normalize<Arith>(ps.d, exp + ps.scale);
        next.push_back({d.t, d.exp, !p.negative});
      }
    }
    std::swap(parts, next);
  }

  for (const Part& p : parts) {
    auto& side = (p.negative != negative) ? out.neg_parts : out.pos_parts;
    side.push_back({p.t, p.exp});
  }
  return out;
}

/// Exact sign of the sum. Validates the expression first (CapacityError,
/// NonFiniteError); OverflowError if a partial product overflows.
template <class Arith, class T = typename Arith::value_type>
int robust_sign(const SumOfProducts<T>& s, RobustObserver<T>* observer = nullptr) {
  using F = FpFormat<T>;
  validate(s);

  MagnitudeHeap<T> pos;
  MagnitudeHeap<T> neg;
  for (const auto& term : s.terms) {
    const auto parts = split<Arith>(term);
    for (const auto& x : parts.pos_parts) pos.push(x);
    for (const auto& x : parts.neg_parts) neg.push(x);
  }
  if (observer) observer->on_filled(pos, neg);

  auto finish = [observer](int sign, RobustExit how) {
    if (observer) observer->on_exit(sign, how);
    return sign;
  };
  auto rescale = [observer](T t) {
    const T r = Arith::mul(t, F::sigma_inv);
    if (observer) observer->on_rescale(std::ldexp(r, F::log2_sigma) != t);
    return r;
  };
  // Pushes the exact split of hi - lo (hi > lo) at the common exponent: the
  // high part on hi's side, the low part on the other.
  auto push_difference = [&](T lo, T hi, int exp, MagnitudeHeap<T>& hi_side,
                             MagnitudeHeap<T>& lo_side) {
    const auto [c, e] = split_sub<Arith>(lo, hi);
    if (observer) observer->on_difference(hi, lo, c, e);
    hi_side.push(normalize<Arith>(c, exp));
    if (e > 0) lo_side.push(normalize<Arith>(e, exp));
  };

  for (;;) {
    if (observer) observer->on_iteration(pos, neg);
    const std::size_t sn = neg.size();
    const std::size_t sp = pos.size();
    if (sn == 0) return finish(sp == 0 ? 0 : 1, sp == 0 ? RobustExit::heaps_empty
                                                        : RobustExit::one_heap_empty);
    if (sp == 0) return finish(-1, RobustExit::one_heap_empty);

    ScaledNumber<T> n = neg.pop();
    ScaledNumber<T> p = pos.pop();

    if (n.exp <= p.exp) {
      // n is at the larger scale (or the same one).
      const bool rescaled = n.exp < p.exp;
      if (rescaled) {
        if (n.exp < p.exp - 1) return finish(-1, RobustExit::exponent_gap);
        p.t = rescale(p.t);
      }
      // After an inexact rescale p.t <= nu < tau < n.t, so the first guard
      // fires before the possibly wrong p.t is used for anything else.
      if (detail::dominates<Arith>(n.t, sp, p.t)) return finish(-1, RobustExit::size_guard);
      if (detail::dominates<Arith>(p.t, sn, n.t)) return finish(1, RobustExit::size_guard);
      if (n.t > p.t) {
        push_difference(p.t, n.t, n.exp, neg, pos);
      } else if (p.t > n.t) {
        push_difference(n.t, p.t, n.exp, pos, neg);
      }
    } else {
      if (n.exp > p.exp + 1) return finish(1, RobustExit::exponent_gap);
      n.t = rescale(n.t);
      if (detail::dominates<Arith>(p.t, sn, n.t)) return finish(1, RobustExit::size_guard);
      if (detail::dominates<Arith>(n.t, sp, p.t)) return finish(-1, RobustExit::size_guard);
      if (p.t > n.t) {
        push_difference(n.t, p.t, p.exp, pos, neg);
      } else if (n.t > p.t) {
        push_difference(p.t, n.t, p.exp, neg, pos);
      }
    }
  }
}

}  // namespace sosign
