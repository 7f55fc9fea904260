#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "sosign/format.hpp"

namespace sosign {

/// The positive value sigma^-exp * t. Normalized numbers satisfy either
/// exp == 0 and t > tau, or exp > 0 and tau < t <= sigma * tau; under those
/// conditions is_less orders them by value.
template <class T>
struct ScaledNumber {
  T t;
  int exp;

  friend bool operator==(const ScaledNumber&, const ScaledNumber&) = default;
};

template <class T>
bool is_normalized(const ScaledNumber<T>& s) {
  using F = FpFormat<T>;
  if (s.exp == 0) return s.t > F::tau;
  return s.exp > 0 && s.t > F::tau && s.t <= F::sigma_tau;
}

/// Rescales (t, exp) by powers of sigma until it is normalized. Each step is
/// exact: values at most tau are scaled up into (tau, max], values above
/// sigma * tau are scaled down into the normal range.
template <class Arith, class T = typename Arith::value_type>
ScaledNumber<T> normalize(T t, int exp) {
  using F = FpFormat<T>;
  assert(t > 0);
  [[maybe_unused]] const int max_steps = 2 + std::max(0, exp);
  [[maybe_unused]] int steps = 0;
  while (t <= F::tau) {
    assert(t * F::sigma <= F::max);
    t = Arith::mul(F::sigma, t);
    ++exp;
    assert(++steps <= max_steps);
  }
  while (exp > 0 && t > F::sigma_tau) {
    assert(t * F::sigma_inv >= F::nu);
    t = Arith::mul(F::sigma_inv, t);
    --exp;
    assert(++steps <= max_steps);
  }
  return {t, exp};
}

/// value(x) < value(y) for normalized arguments: a larger exp means a
/// smaller value, equal exps compare t.
template <class T>
bool is_less(const ScaledNumber<T>& x, const ScaledNumber<T>& y) {
  if (x.exp > y.exp) return true;
  if (x.exp < y.exp) return false;
  return x.t < y.t;
}

/// Max-heap of positive scaled numbers under is_less.
template <class T>
class MagnitudeHeap {
 public:
  void push(const ScaledNumber<T>& s) {
    items_.push_back(s);
    std::push_heap(items_.begin(), items_.end(), less);
  }

  ScaledNumber<T> pop() {
    assert(!items_.empty());
    std::pop_heap(items_.begin(), items_.end(), less);
    const ScaledNumber<T> top = items_.back();
    items_.pop_back();
    return top;
  }

  const ScaledNumber<T>& top() const {
    assert(!items_.empty());
    return items_.front();
  }

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  void reserve(std::size_t n) { items_.reserve(n); }

  /// Heap contents in storage order.
  std::span<const ScaledNumber<T>> items() const noexcept { return items_; }

 private:
  static bool less(const ScaledNumber<T>& x, const ScaledNumber<T>& y) { return is_less(x, y); }

  std::vector<ScaledNumber<T>> items_;
};

}  // namespace sosign
