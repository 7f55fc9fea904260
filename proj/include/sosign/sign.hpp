#pragma once

// Entry points: the quick filter first, the robust loop when it abstains.

#include <string_view>

#include "sosign/quick_sign.hpp"
#include "sosign/robust_sign.hpp"
#include "sosign/rounding.hpp"

namespace sosign {

enum class Method { quick, robust };

std::string_view to_string(Method m);

struct Decision {
  int sign;
  Method method;

  friend bool operator==(const Decision&, const Decision&) = default;
};

template <class Arith, class T = typename Arith::value_type>
Decision hybrid_sign(const SumOfProducts<T>& s) {
  validate(s);
  SignResult quick = SignResult::inconclusive;
  try {
    quick = quick_sign<Arith>(s);
  } catch (const OverflowError&) {
    // Only the bound accumulation overflowed; the robust path decides.
  } catch (const DomainError&) {
  }
  if (quick == SignResult::positive) return {1, Method::quick};
  if (quick == SignResult::negative) return {-1, Method::quick};
  return {robust_sign<Arith>(s), Method::robust};
}

/// Sign of the exact sum, -1, 0 or +1, with the stage that decided it.
template <class T>
Decision sign(const SumOfProducts<T>& s, Backend backend = Backend::emulated) {
  return with_backend<T>(backend, [&](auto arith) {
    return hybrid_sign<decltype(arith)>(s);
  });
}

/// Quick filter alone.
template <class T>
SignResult evaluate_quick(const SumOfProducts<T>& s, Backend backend = Backend::emulated) {
  validate(s);
  return with_backend<T>(backend, [&](auto arith) {
    return quick_sign<decltype(arith)>(s);
  });
}

/// Robust loop alone.
template <class T>
int evaluate_robust(const SumOfProducts<T>& s, Backend backend = Backend::emulated,
                RobustObserver<T>* observer = nullptr) {
  return with_backend<T>(backend, [&](auto arith) {
    return robust_sign<decltype(arith)>(s, observer);
  });
}

}  // namespace sosign
