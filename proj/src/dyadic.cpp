#include "sosign/dyadic.hpp"

#include <utility>

namespace sosign {

Dyadic::Dyadic(mpz_class mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  canonicalize();
}

void Dyadic::canonicalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (tz > 0) {
    mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
    exponent_ += static_cast<std::int64_t>(tz);
  }
}

std::int64_t Dyadic::msb() const {
  return exponent_ + static_cast<std::int64_t>(mpz_sizeinbase(mantissa_.get_mpz_t(), 2)) - 1;
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  r.mantissa_ = -r.mantissa_;
  return r;
}

Dyadic Dyadic::abs() const {
  Dyadic r = *this;
  r.mantissa_ = ::abs(r.mantissa_);
  return r;
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (exponent_ <= rhs.exponent_) {
    mpz_class shifted;
    mpz_mul_2exp(shifted.get_mpz_t(), rhs.mantissa_.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(rhs.exponent_ - exponent_));
    mantissa_ += shifted;
  } else {
    mpz_mul_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(exponent_ - rhs.exponent_));
    mantissa_ += rhs.mantissa_;
    exponent_ = rhs.exponent_;
  }
  canonicalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) { return *this += -rhs; }

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
  mantissa_ *= rhs.mantissa_;
  exponent_ += rhs.exponent_;
  // odd * odd is odd; only a zero factor needs fixing up
  if (mantissa_ == 0) exponent_ = 0;
  return *this;
}

Dyadic Dyadic::scaled(std::int64_t k) const {
  Dyadic r = *this;
  if (!r.is_zero()) r.exponent_ += k;
  return r;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::strong_ordering::equal;
  // Same sign: compare magnitudes by leading bit first.
  const auto ma = a.msb();
  const auto mb = b.msb();
  if (ma != mb) return sa > 0 ? ma <=> mb : mb <=> ma;
  const int s = (a - b).sign();
  return s <=> 0;
}

std::string Dyadic::to_string() const {
  return mantissa_.get_str() + "*2^" + std::to_string(exponent_);
}

}  // namespace sosign
