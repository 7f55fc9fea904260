#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

namespace sosign {

enum class Format { binary64, binary32 };

std::string_view to_string(Format f);
Format parse_format(std::string_view name);

/// Constants characterizing a binary floating-point format.
///
///   nu     smallest positive normal
///   eps    machine precision, 1 + eps is the successor of 1
///   sigma  largest power of two
///   tau    2 nu / eps, the threshold below which products are scaled by sigma
///
/// Every constant is a power of two, so they are kept as base-2 logarithms as
/// well; this lets the assumptions below be checked without overflow.
template <class T>
struct FpFormat {
  static_assert(std::numeric_limits<T>::is_iec559 && std::numeric_limits<T>::radix == 2 &&
                (std::numeric_limits<T>::digits == 53 || std::numeric_limits<T>::digits == 24));

  using value_type = T;

  static constexpr Format format =
      std::numeric_limits<T>::digits == 53 ? Format::binary64 : Format::binary32;

  static constexpr int digits = std::numeric_limits<T>::digits;
  static constexpr int log2_nu = std::numeric_limits<T>::min_exponent - 1;
  static constexpr int log2_eps = 1 - digits;
  static constexpr int log2_sigma = std::numeric_limits<T>::max_exponent - 1;
  static constexpr int log2_tau = 1 + log2_nu - log2_eps;
  static constexpr int log2_min_sub = log2_nu + log2_eps;
  /// log2(sigma) - log2(nu)
  static constexpr int emax = log2_sigma - log2_nu;

  static constexpr T nu = std::numeric_limits<T>::min();
  static constexpr T eps = std::numeric_limits<T>::epsilon();
  static constexpr T min_sub = std::numeric_limits<T>::denorm_min();
  static constexpr T max = std::numeric_limits<T>::max();

  static constexpr T pow2(int k) {
    T r = 1;
    for (; k > 0; --k) r *= 2;
    for (; k < 0; ++k) r /= 2;
    return r;
  }

  static constexpr T sigma = pow2(log2_sigma);
  static constexpr T sigma_inv = pow2(-log2_sigma);
  static constexpr T tau = pow2(log2_tau);
  static constexpr T sigma_tau = pow2(log2_sigma + log2_tau);

  /// 1/eps as an integer; the capacity limit of the robust algorithm.
  static constexpr std::uint64_t inv_eps = std::uint64_t{1} << (digits - 1);

  /// sigma eps^2 >= 2 and sigma^2 nu eps > 2, the assumptions that make the
  /// third rung of the product splitting ladder exact.
  static constexpr bool scaling_assumptions_hold() {
    return log2_sigma + 2 * log2_eps >= 1 && 2 * log2_sigma + log2_nu + log2_eps > 1;
  }

  static_assert(scaling_assumptions_hold());
  static_assert(sigma_inv > 0 && sigma_inv * sigma == 1);
  static_assert(tau == 2 * nu / eps);
};

}  // namespace sosign
