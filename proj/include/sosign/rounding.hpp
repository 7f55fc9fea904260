#pragma once

// Round-toward-+infinity arithmetic.
//
// Two interchangeable backends implement the same operations:
//
//   EmulatedRoundUp<T>  runs in the default round-to-nearest mode; it computes
//                       the nearest result, recovers the sign of the exact
//                       residual with error-free transforms and steps to the
//                       successor when the residual is positive. Stateless.
//   HardwareRoundUp<T>  uses the platform's directed rounding. Only valid while
//                       a RoundingGuard is alive on the calling thread.
//
// Both raise OverflowError when the exact result exceeds the largest finite
// value and DomainError when it lies below its negation. Inputs must be finite.

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <string_view>
#include <utility>

#include "sosign/dyadic.hpp"
#include "sosign/errors.hpp"
#include "sosign/format.hpp"

namespace sosign {

enum class Backend { emulated, hardware };

std::string_view to_string(Backend b);
Backend parse_backend(std::string_view name);

/// True when the platform lets us switch to upward rounding.
bool hardware_rounding_available() noexcept;

/// Switches the calling thread to upward rounding and restores the previous
/// mode on destruction. Guards nest.
class RoundingGuard {
 public:
  RoundingGuard();
  ~RoundingGuard();
  RoundingGuard(const RoundingGuard&) = delete;
  RoundingGuard& operator=(const RoundingGuard&) = delete;

  /// True while at least one guard is alive on this thread.
  static bool active() noexcept;

 private:
  int previous_mode_;
};

namespace detail {

[[noreturn]] void throw_overflow(std::string_view op);
[[noreturn]] void throw_domain(std::string_view op);

template <class T>
inline int sign_of(T x) {
  return (x > 0) - (x < 0);
}

template <class T>
inline void two_sum(T a, T b, T& s, T& err) {
  s = a + b;
  const T bb = s - a;
  err = (a - (s - bb)) + (b - bb);
}

/// s + err == a + b for |a| >= |b| when s is finite; every intermediate is
/// bounded by |s| and |b|, so nothing overflows.
template <class T>
inline void fast_two_sum(T a, T b, T& s, T& err) {
  s = a + b;
  err = b - (s - a);
}

/// Exact sign of x[0] + ... + x[N-1]. The terms must be small enough that no
/// partial sum overflows. Builds a nonoverlapping expansion by repeated
/// two_sum; its most significant nonzero component carries the sign.
template <class T, std::size_t N>
int exact_sum_sign(const std::array<T, N>& x) {
  std::array<T, N> e{};
  std::size_t m = 0;
  for (T q : x) {
    for (std::size_t i = 0; i < m; ++i) {
      T s, h;
      two_sum(q, e[i], s, h);
      e[i] = h;
      q = s;
    }
    e[m++] = q;
  }
  for (std::size_t i = m; i-- > 0;) {
    if (e[i] != 0) return sign_of(e[i]);
  }
  return 0;
}

/// Sign of a*b - p for finite nonzero a, b and finite p.
template <class T>
int product_residual_sign(T a, T b, T p) {
  const int ea = std::ilogb(a);
  const int eb = std::ilogb(b);
  const T an = std::ldexp(a, -ea);
  const T bn = std::ldexp(b, -eb);
  const T ph = an * bn;
  const T pl = std::fma(an, bn, -ph);
  const T pn = std::ldexp(p, -(ea + eb));
  return exact_sum_sign(std::array<T, 3>{ph, pl, -pn});
}

/// Sign of a*x + y - f for finite a, x, y, f where f = fma(a, x, y) rounded
/// to nearest.
template <class T>
int fma_residual_sign(T a, T x, T y, T f) {
  using F = FpFormat<T>;
  if (a == 0 || x == 0) return sign_of(y - f);
  if (y == 0) return product_residual_sign(a, x, f);

  const int ea = std::ilogb(a);
  const int ex = std::ilogb(x);
  const int ey = std::ilogb(y);
  const int e = ea + ex;  // 2^e <= |a x| < 2^(e+2)
  const int top = std::max(e + 1, ey);

  // Product far below the last bit of y: f is y or a neighbor of y.
  if (e - top < F::log2_nu + F::digits - 1) {
    if (y != f) return sign_of(y - f);
    return sign_of(a) * sign_of(x);
  }

  const T an = std::ldexp(a, -ea);
  const T xn = std::ldexp(x, -ex);
  const T ph = std::ldexp(an * xn, e - top);
  const T pl = std::ldexp(std::fma(an, xn, -(an * xn)), e - top);
  const T fs = std::ldexp(f, -top);

  // y far below the last bit of the product.
  if (ey - top < F::log2_nu) {
    const int s = exact_sum_sign(std::array<T, 3>{ph, pl, -fs});
    return s != 0 ? s : sign_of(y);
  }
  const T ys = std::ldexp(y, -top);
  return exact_sum_sign(std::array<T, 4>{ph, pl, ys, -fs});
}

/// Turns a nearest-rounded result and the sign of its residual into the
/// upward-rounded result, raising on overflow.
template <class T>
T step_up(T nearest, int residual_sign, std::string_view op) {
  using F = FpFormat<T>;
  if (std::isinf(nearest)) {
    if (nearest > 0) throw_overflow(op);
    throw_domain(op);
  }
  if (residual_sign > 0) {
    if (nearest == F::max) throw_overflow(op);
    return std::nextafter(nearest, std::numeric_limits<T>::infinity());
  }
  if (residual_sign < 0 && nearest == -F::max) throw_domain(op);
  return nearest;
}

}  // namespace detail

template <class T>
struct EmulatedRoundUp {
  using value_type = T;
  static constexpr Backend backend = Backend::emulated;

  static T add(T a, T b) {
    if (std::fabs(a) < std::fabs(b)) std::swap(a, b);
    T s, err;
    detail::fast_two_sum(a, b, s, err);
    if (!std::isfinite(s)) return detail::step_up(s, 0, "add");
    return detail::step_up(s, detail::sign_of(err), "add");
  }

  static T sub(T a, T b) { return add(a, -b); }

  static T mul(T a, T b) {
    const T p = a * b;
    if (!std::isfinite(p)) return detail::step_up(p, 0, "mul");
    if (a == 0 || b == 0) return p;
    return detail::step_up(p, detail::product_residual_sign(a, b, p), "mul");
  }

  /// Rounds a*x + y upward with a single rounding.
  static T fma(T a, T x, T y) {
    const T f = std::fma(a, x, y);
    if (!std::isfinite(f)) return detail::step_up(f, 0, "fma");
    return detail::step_up(f, detail::fma_residual_sign(a, x, y, f), "fma");
  }
};

/// Directed-rounding backend. Definitions live in a translation unit compiled
/// without assumptions about the rounding mode.
template <class T>
struct HardwareRoundUp {
  using value_type = T;
  static constexpr Backend backend = Backend::hardware;

  static T add(T a, T b);
  static T sub(T a, T b);
  static T mul(T a, T b);
  static T fma(T a, T x, T y);
};

extern template struct HardwareRoundUp<float>;
extern template struct HardwareRoundUp<double>;

/// The least value of the format that is >= x.
template <class T>
T round_up(const Dyadic& x);

extern template float round_up<float>(const Dyadic&);
extern template double round_up<double>(const Dyadic&);

/// Runs f with the arithmetic policy for the requested backend, holding a
/// RoundingGuard for the hardware backend.
template <class T, class F>
decltype(auto) with_backend(Backend backend, F&& f) {
  if (backend == Backend::hardware) {
    RoundingGuard guard;
    return f(HardwareRoundUp<T>{});
  }
  return f(EmulatedRoundUp<T>{});
}

}  // namespace sosign
