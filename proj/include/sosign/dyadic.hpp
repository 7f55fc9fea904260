#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace sosign {

/// An exact dyadic rational mantissa * 2^exponent with an arbitrary-precision
/// integer mantissa. Values are kept canonical: the mantissa is odd, or the
/// value is zero and stored as (0, 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(mpz_class mantissa, std::int64_t exponent);
  explicit Dyadic(long value) : Dyadic(mpz_class(value), 0) {}

  static Dyadic pow2(std::int64_t k) { return Dyadic(mpz_class(1), k); }

  const mpz_class& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }

  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return sign() == 0; }

  /// Exponent of the leading bit: 2^msb <= |x| < 2^(msb+1). Undefined for 0.
  std::int64_t msb() const;

  Dyadic operator-() const;
  Dyadic abs() const;
  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  Dyadic& operator*=(const Dyadic& rhs);
  /// Multiplies by 2^k exactly.
  Dyadic scaled(std::int64_t k) const;

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// "m*2^k" in decimal, for diagnostics.
  std::string to_string() const;

 private:
  void canonicalize();

  mpz_class mantissa_{0};
  std::int64_t exponent_ = 0;
};

}  // namespace sosign
