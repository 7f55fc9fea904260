// Compiled with -frounding-math: arithmetic here must honor the dynamic
// rounding mode and must not be folded or reordered across fenv calls.

#include <cfenv>
#include <cmath>

#include "sosign/rounding.hpp"

#pragma STDC FENV_ACCESS ON

namespace sosign {

namespace {

thread_local int guard_depth = 0;

template <class T>
T checked(volatile T r, const char* op) {
  using F = FpFormat<T>;
  const T v = r;
  if (std::isinf(v)) detail::throw_overflow(op);
  // Upward rounding yields -max for every exact result in [-inf, -max]; only
  // -max itself is exact.
  if (v == -F::max && std::fetestexcept(FE_INEXACT)) detail::throw_domain(op);
  return v;
}

}  // namespace

bool hardware_rounding_available() noexcept {
#ifdef FE_UPWARD
  const int old = std::fegetround();
  if (std::fesetround(FE_UPWARD) != 0) return false;
  volatile double one = 1.0;
  volatile double tiny = 0x1p-60;
  const bool rounds_up = one + tiny > 1.0;
  std::fesetround(old);
  return rounds_up;
#else
  return false;
#endif
}

RoundingGuard::RoundingGuard() : previous_mode_(std::fegetround()) {
#ifdef FE_UPWARD
  if (std::fesetround(FE_UPWARD) != 0) {
    throw Error("platform does not support upward rounding");
  }
#else
  throw Error("platform does not support upward rounding");
#endif
  ++guard_depth;
}

RoundingGuard::~RoundingGuard() {
  --guard_depth;
  std::fesetround(previous_mode_);
}

bool RoundingGuard::active() noexcept { return guard_depth > 0; }

template <class T>
T HardwareRoundUp<T>::add(T a, T b) {
  assert(RoundingGuard::active());
  std::feclearexcept(FE_INEXACT);
  volatile T r = a + b;
  return checked<T>(r, "add");
}

template <class T>
T HardwareRoundUp<T>::sub(T a, T b) {
  assert(RoundingGuard::active());
  std::feclearexcept(FE_INEXACT);
  volatile T r = a - b;
  return checked<T>(r, "sub");
}

template <class T>
T HardwareRoundUp<T>::mul(T a, T b) {
  assert(RoundingGuard::active());
  std::feclearexcept(FE_INEXACT);
  volatile T r = a * b;
  return checked<T>(r, "mul");
}

template <class T>
T HardwareRoundUp<T>::fma(T a, T x, T y) {
  assert(RoundingGuard::active());
  std::feclearexcept(FE_INEXACT);
  volatile T r = std::fma(a, x, y);
  return checked<T>(r, "fma");
}

template struct HardwareRoundUp<float>;
template struct HardwareRoundUp<double>;

}  // namespace sosign
