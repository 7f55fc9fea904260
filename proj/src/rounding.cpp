#include "sosign/rounding.hpp"

#include <string>

namespace sosign {

std::string_view to_string(Format f) {
  return f == Format::binary64 ? "binary64" : "binary32";
}

Format parse_format(std::string_view name) {
  if (name == "binary64" || name == "double") return Format::binary64;
  if (name == "binary32" || name == "float") return Format::binary32;
  throw Error("unknown format '" + std::string(name) + "'");
}

std::string_view to_string(Backend b) {
  return b == Backend::emulated ? "emulated" : "hardware";
}

Backend parse_backend(std::string_view name) {
  if (name == "emulated") return Backend::emulated;
  if (name == "hardware") return Backend::hardware;
  throw Error("unknown backend '" + std::string(name) + "'");
}

namespace detail {

void throw_overflow(std::string_view op) {
  throw OverflowError("round-up " + std::string(op) + ": result exceeds the largest finite value");
}

void throw_domain(std::string_view op) {
  throw DomainError("round-up " + std::string(op) +
                    ": result is below the most negative finite value");
}

}  // namespace detail

template <class T>
T round_up(const Dyadic& x) {
  using F = FpFormat<T>;
  if (x.is_zero()) return T(0);

  const bool negative = x.sign() < 0;
  const mpz_class magnitude = abs(x.mantissa());
  const std::int64_t top = x.msb();
  const std::int64_t emax_bit = F::log2_sigma;

  if (top > emax_bit) {
    if (negative) detail::throw_domain("round_up");
    detail::throw_overflow("round_up");
  }

  // Weight of the last representable bit at this magnitude.
  const std::int64_t quantum = std::max<std::int64_t>(top - (F::digits - 1), F::log2_min_sub);
  const std::int64_t shift = quantum - x.exponent();

  mpz_class kept;
  bool inexact = false;
  if (shift <= 0) {
    mpz_mul_2exp(kept.get_mpz_t(), magnitude.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  } else {
    mpz_fdiv_q_2exp(kept.get_mpz_t(), magnitude.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    // The mantissa is odd, so any positive shift drops a set bit.
    inexact = true;
  }

  const mpz_class max_mantissa = (mpz_class(1) << F::digits) - 1;
  if (inexact && top == emax_bit && kept == max_mantissa) {
    if (negative) detail::throw_domain("round_up");
    detail::throw_overflow("round_up");
  }
  if (inexact && !negative) kept += 1;

  // kept <= 2^digits, exact in double; the scaled value is representable in T.
  const double scaled = std::ldexp(kept.get_d(), static_cast<int>(quantum));
  const T r = static_cast<T>(scaled);
  return negative ? -r : r;
}

template float round_up<float>(const Dyadic&);
template double round_up<double>(const Dyadic&);

}  // namespace sosign
