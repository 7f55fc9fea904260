#pragma once

// Exact ground truth. Every finite binary floating-point value is a dyadic
// rational m * 2^k; sums of products of them are evaluated exactly with
// arbitrary-precision integers. Nothing here uses the round-up arithmetic.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "sosign/dyadic.hpp"
#include "sosign/expr.hpp"
#include "sosign/scaled.hpp"

namespace sosign::oracle {

/// x == mantissa * 2^exponent exactly; throws Error for NaN/infinity.
template <class T>
Dyadic decompose(T x);

/// The value of the format equal to x; throws Error when x is not exactly
/// representable.
template <class T>
T recompose(const Dyadic& x);

template <class T>
Dyadic exact_value(const ProductTerm<T>& term);

template <class T>
Dyadic exact_value(const SumOfProducts<T>& s);

/// sigma^-exp * t
template <class T>
Dyadic exact_value(const ScaledNumber<T>& s);

template <class T>
int oracle_sign(const SumOfProducts<T>& s);

/// True when every partial product of every term stays far enough below the
/// largest finite value that bounds and sums of them cannot overflow.
template <class T>
bool magnitudes_safe(const SumOfProducts<T>& s);

/// Certificate that the interval filter must decide the sign: no factor or
/// product is subnormal and |S| > 4 (n_max + m + 2) eps sum |p_i|, which
/// exceeds the accumulated rounding error of the bounds.
template <class T>
bool well_separated(const SumOfProducts<T>& s);

enum class Family { collinear, near_collinear, underflow, cancellation, random, separated };

std::string_view to_string(Family f);
Family parse_family(std::string_view name);
inline constexpr Family kAdversarialFamilies[] = {Family::collinear, Family::near_collinear,
                                                  Family::underflow, Family::cancellation,
                                                  Family::random};

template <class T>
struct AdversarialCase {
  SumOfProducts<T> expression;
  int expected_sign;
  Family family;
};

/// Deterministic for a fixed (family, count, seed) on every platform.
template <class T>
std::vector<AdversarialCase<T>> generate(Family family, std::size_t count, std::uint64_t seed);

/// Portable random source: the mt19937_64 sequence is fixed by the standard;
/// the helpers avoid the implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Random value with leading bit 2^exponent (clamped into the format's range,
/// subnormal below nu), random mantissa bits and sign.
template <class T>
T random_value(Rng& rng, int exponent, bool allow_negative = true);

/// Uniformly random finite bit pattern.
template <class T>
T random_bits(Rng& rng);

}  // namespace sosign::oracle
