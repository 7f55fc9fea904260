#include "sosign/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "sosign/predicates.hpp"

namespace sosign::oracle {

namespace {

template <class T>
struct Bits;
template <>
struct Bits<float> {
  using type = std::uint32_t;
};
template <>
struct Bits<double> {
  using type = std::uint64_t;
};

template <class T>
struct Layout {
  using U = typename Bits<T>::type;
  static constexpr int fraction_bits = FpFormat<T>::digits - 1;
  static constexpr int exponent_bits = static_cast<int>(sizeof(U) * 8) - 1 - fraction_bits;
  static constexpr int bias = (1 << (exponent_bits - 1)) - 1;
  static constexpr U fraction_mask = (U{1} << fraction_bits) - 1;
  static constexpr U exponent_mask = (U{1} << exponent_bits) - 1;
};

std::size_t bit_length(std::size_t n) {
  std::size_t b = 0;
  for (; n > 0; n >>= 1) ++b;
  return b;
}

}  // namespace

template <class T>
Dyadic decompose(T x) {
  using L = Layout<T>;
  using U = typename L::U;
  const U bits = std::bit_cast<U>(x);
  const bool negative = (bits >> (sizeof(U) * 8 - 1)) != 0;
  const U biased = (bits >> L::fraction_bits) & L::exponent_mask;
  const U fraction = bits & L::fraction_mask;
  if (biased == L::exponent_mask) throw Error("decompose: non-finite value");

  mpz_class m;
  std::int64_t e;
  if (biased == 0) {
    m = static_cast<unsigned long>(fraction);
    e = 1 - L::bias - L::fraction_bits;
  } else {
    m = static_cast<unsigned long>(fraction | (U{1} << L::fraction_bits));
    e = static_cast<std::int64_t>(biased) - L::bias - L::fraction_bits;
  }
  if (negative) m = -m;
  return Dyadic(std::move(m), e);
}

template <class T>
T recompose(const Dyadic& x) {
  using L = Layout<T>;
  using U = typename L::U;
  using F = FpFormat<T>;
  if (x.is_zero()) return T(0);

  const mpz_class m = abs(x.mantissa());
  const auto bits = static_cast<std::int64_t>(mpz_sizeinbase(m.get_mpz_t(), 2));
  const std::int64_t top = x.exponent() + bits - 1;
  if (bits > F::digits || top > F::log2_sigma || x.exponent() < F::log2_min_sub) {
    throw Error("value " + x.to_string() + " is not representable");
  }

  const U mantissa = static_cast<U>(m.get_ui());
  U pattern;
  if (top < F::log2_nu) {
    pattern = mantissa << (x.exponent() - F::log2_min_sub);
  } else {
    const U significand = mantissa << (L::fraction_bits - (top - x.exponent()));
    const U biased = static_cast<U>(top + L::bias);
    pattern = (biased << L::fraction_bits) | (significand & L::fraction_mask);
  }
  if (x.sign() < 0) pattern |= U{1} << (sizeof(U) * 8 - 1);
  return std::bit_cast<T>(pattern);
}

template <class T>
Dyadic exact_value(const ProductTerm<T>& term) {
  Dyadic p(1);
  for (T a : term.factors) p *= decompose(a);
  return p;
}

template <class T>
Dyadic exact_value(const SumOfProducts<T>& s) {
  // Common-denominator accumulation: collect the integer products and their
  // exponents, then shift everything onto the smallest exponent once.
  std::vector<Dyadic> products;
  products.reserve(s.terms.size());
  std::int64_t low = 0;
  bool any = false;
  for (const auto& term : s.terms) {
    Dyadic p = exact_value(term);
    if (p.is_zero()) continue;
    low = any ? std::min(low, p.exponent()) : p.exponent();
    any = true;
    products.push_back(std::move(p));
  }
  if (!any) return Dyadic();
  mpz_class total = 0;
  mpz_class shifted;
  for (const auto& p : products) {
    mpz_mul_2exp(shifted.get_mpz_t(), p.mantissa().get_mpz_t(),
                 static_cast<mp_bitcnt_t>(p.exponent() - low));
    total += shifted;
  }
  return Dyadic(std::move(total), low);
}

template <class T>
Dyadic exact_value(const ScaledNumber<T>& s) {
  return decompose(s.t).scaled(-static_cast<std::int64_t>(s.exp) * FpFormat<T>::log2_sigma);
}

template <class T>
int oracle_sign(const SumOfProducts<T>& s) {
  return exact_value(s).sign();
}

template <class T>
bool magnitudes_safe(const SumOfProducts<T>& s) {
  const std::int64_t limit =
      FpFormat<T>::log2_sigma - 3 - static_cast<std::int64_t>(bit_length(s.terms.size()));
  for (const auto& term : s.terms) {
    Dyadic p(1);
    for (T a : term.factors) {
      if (!std::isfinite(a)) return false;
      p *= decompose(a);
      if (!p.is_zero() && p.msb() > limit) return false;
    }
  }
  return true;
}

template <class T>
bool well_separated(const SumOfProducts<T>& s) {
  using F = FpFormat<T>;
  std::size_t n_max = 0;
  Dyadic total;
  Dyadic magnitude;
  for (const auto& term : s.terms) {
    n_max = std::max(n_max, term.size());
    Dyadic p(1);
    for (T a : term.factors) {
      if (a == 0 || std::fabs(a) < F::nu) return false;
      p *= decompose(a);
      if (p.msb() < F::log2_nu) return false;
    }
    total += p;
    magnitude += p.abs();
  }
  const auto k = static_cast<long>(4 * (n_max + s.terms.size() + 2));
  // |S| / eps > k sum |p_i|
  return total.abs().scaled(-F::log2_eps) > Dyadic(k) * magnitude;
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::collinear: return "collinear";
    case Family::near_collinear: return "near-collinear";
    case Family::underflow: return "underflow";
    case Family::cancellation: return "cancellation";
    case Family::random: return "random";
    case Family::separated: return "separated";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::collinear, Family::near_collinear, Family::underflow,
                   Family::cancellation, Family::random, Family::separated}) {
    if (name == to_string(f)) return f;
  }
  throw Error("unknown family '" + std::string(name) + "'");
}

template <class T>
T random_value(Rng& rng, int exponent, bool allow_negative) {
  using F = FpFormat<T>;
  exponent = std::clamp(exponent, F::log2_min_sub, F::log2_sigma);
  mpz_class m;
  std::int64_t e;
  if (exponent >= F::log2_nu) {
    const std::uint64_t frac = rng.bits() & ((std::uint64_t{1} << (F::digits - 1)) - 1);
    m = static_cast<unsigned long>(frac | (std::uint64_t{1} << (F::digits - 1)));
    e = exponent - (F::digits - 1);
  } else {
    // Subnormal: leading bit at 2^exponent, lower bits random.
    const int width = exponent - F::log2_min_sub;
    const std::uint64_t low = width > 0 ? rng.bits() & ((std::uint64_t{1} << width) - 1) : 0;
    m = static_cast<unsigned long>((std::uint64_t{1} << width) | low);
    e = F::log2_min_sub;
  }
  if (allow_negative && rng.coin()) m = -m;
  return recompose<T>(Dyadic(std::move(m), e));
}

template <class T>
T random_bits(Rng& rng) {
  using U = typename Layout<T>::U;
  for (;;) {
    const T x = std::bit_cast<T>(static_cast<U>(rng.bits()));
    if (std::isfinite(x)) return x;
  }
}

namespace {

template <class T>
T nudge(T x, int ulps) {
  const T dir = ulps > 0 ? std::numeric_limits<T>::infinity() : -std::numeric_limits<T>::infinity();
  for (int i = 0; i < std::abs(ulps); ++i) x = std::nextafter(x, dir);
  return x;
}

template <class T>
T pow2(int k) {
  return std::ldexp(T(1), k);
}

template <class T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

template <class T>
SumOfProducts<T> collinear_case(Rng& rng) {
  const int span = std::min(10, FpFormat<T>::digits / 2 - 2);
  auto coord = [&] { return rng.between(-(std::int64_t{1} << span), std::int64_t{1} << span); };
  const T scale = pow2<T>(static_cast<int>(rng.between(-30, 30)));
  const auto kind = rng.below(10);

  if (kind < 7) {
    // orient2d on a lattice line
    const std::int64_t ax = coord(), ay = coord(), dx = coord() / 8, dy = coord() / 8;
    std::vector<std::pair<std::int64_t, std::int64_t>> pts;
    for (int i = 0; i < 3; ++i) {
      const auto k = rng.between(-4, 4);
      pts.push_back({ax + k * dx, ay + k * dy});
    }
    shuffle(rng, pts);
    std::vector<T> xs;
    for (auto [x, y] : pts) {
      xs.push_back(static_cast<T>(x) * scale);
      xs.push_back(static_cast<T>(y) * scale);
    }
    return predicate_expression<T>(Predicate::orient2d, xs);
  }
  if (kind < 9) {
    // orient3d on a lattice plane
    std::int64_t o[3], u[3], v[3];
    for (int i = 0; i < 3; ++i) {
      o[i] = coord();
      u[i] = coord() / 16;
      v[i] = coord() / 16;
    }
    std::vector<std::array<std::int64_t, 3>> pts;
    for (int i = 0; i < 4; ++i) {
      const auto a = rng.between(-3, 3), b = rng.between(-3, 3);
      pts.push_back({o[0] + a * u[0] + b * v[0], o[1] + a * u[1] + b * v[1], o[2] + a * u[2] + b * v[2]});
    }
    shuffle(rng, pts);
    std::vector<T> xs;
    for (const auto& p : pts) {
      for (auto c : p) xs.push_back(static_cast<T>(c) * scale);
    }
    return predicate_expression<T>(Predicate::orient3d, xs);
  }
  // incircle on lattice points of a circle of radius 65 (all integer
  // solutions of x^2 + y^2 = 65^2 up to sign and swap)
  static constexpr std::int64_t kCircle[][2] = {{65, 0}, {63, 16}, {60, 25}, {56, 33}, {52, 39}};
  const std::int64_t cx = coord() / 4, cy = coord() / 4;
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (int i = 0; i < 4; ++i) {
    const auto& q = kCircle[rng.below(5)];
    std::int64_t x = q[0], y = q[1];
    if (rng.coin()) std::swap(x, y);
    if (rng.coin()) x = -x;
    if (rng.coin()) y = -y;
    pts.push_back({cx + x, cy + y});
  }
  std::vector<T> xs;
  for (auto [x, y] : pts) {
    xs.push_back(static_cast<T>(x) * scale);
    xs.push_back(static_cast<T>(y) * scale);
  }
  return predicate_expression<T>(Predicate::incircle, xs);
}

template <class T>
SumOfProducts<T> near_collinear_case(Rng& rng) {
  const int e = static_cast<int>(rng.between(-10, 10));
  auto coord = [&] { return random_value<T>(rng, e + static_cast<int>(rng.between(-3, 0))); };
  auto fraction = [&] { return static_cast<T>(std::ldexp(static_cast<double>(rng.bits() >> 11), -53)); };
  auto jitter = [&] { return rng.below(3) == 0 ? 0 : static_cast<int>(rng.between(-2, 2)); };

  if (rng.below(5) < 4) {
    T ax = coord(), ay = coord(), bx = coord(), by = coord();
    T t = fraction();
    if (rng.below(6) == 0) {
      // short coordinates and t: C lands exactly on the line unless nudged
      const T unit = std::ldexp(T(1), e - 8);
      ax = unit * static_cast<T>(rng.between(-255, 255));
      ay = unit * static_cast<T>(rng.between(-255, 255));
      bx = unit * static_cast<T>(rng.between(-255, 255));
      by = unit * static_cast<T>(rng.between(-255, 255));
      t = static_cast<T>(rng.between(0, 16)) / 16;
    }
    T cx = ax + t * (bx - ax);
    T cy = ay + t * (by - ay);
    cx = nudge(cx, jitter());
    cy = nudge(cy, jitter());
    std::vector<std::pair<T, T>> pts = {{ax, ay}, {bx, by}, {cx, cy}};
    shuffle(rng, pts);
    std::vector<T> xs;
    for (auto [x, y] : pts) {
      xs.push_back(x);
      xs.push_back(y);
    }
    return predicate_expression<T>(Predicate::orient2d, xs);
  }
  // Near-cocircular: rounded points of a circle, the last one nudged.
  const T r = std::ldexp(T(1), e);
  const T cx = coord(), cy = coord();
  std::vector<T> xs;
  for (int i = 0; i < 4; ++i) {
    const double angle = 6.283185307179586 * (static_cast<double>(rng.bits() >> 11) * 0x1p-53);
    T x = cx + r * static_cast<T>(std::cos(angle));
    T y = cy + r * static_cast<T>(std::sin(angle));
    if (i == 3) {
      x = nudge(x, jitter());
      y = nudge(y, jitter());
    }
    xs.push_back(x);
    xs.push_back(y);
  }
  return predicate_expression<T>(Predicate::incircle, xs);
}

/// A product of n factors whose exact value has leading bit near 2^target.
template <class T>
ProductTerm<T> product_near(Rng& rng, int n, int target) {
  using F = FpFormat<T>;
  ProductTerm<T> term;
  int remaining = target;
  for (int j = n; j > 1; --j) {
    const int share = remaining / j;
    const int e = std::clamp(share + static_cast<int>(rng.between(-40, 40)), F::log2_min_sub + 1,
                             F::log2_sigma / 2);
    term.factors.push_back(random_value<T>(rng, e));
    remaining -= e;
  }
  term.factors.push_back(random_value<T>(rng, std::clamp(remaining, F::log2_min_sub, F::log2_sigma / 2)));
  shuffle(rng, term.factors);
  return term;
}

template <class T>
SumOfProducts<T> underflow_case(Rng& rng) {
  using F = FpFormat<T>;
  SumOfProducts<T> s;
  const int terms = static_cast<int>(rng.between(1, 5));
  for (int i = 0; i < terms; ++i) {
    const int n = static_cast<int>(rng.between(2, 4));
    const int target = static_cast<int>(rng.between(F::log2_min_sub - 3 * F::digits, F::log2_nu + 4));
    s.terms.push_back(product_near<T>(rng, n, target));
  }
  // Mirror terms: exact or one-ulp-off negations that cancel in the subnormal
  // range.
  const int mirrors = static_cast<int>(rng.between(0, terms));
  for (int i = 0; i < mirrors; ++i) {
    ProductTerm<T> m = s.terms[rng.below(static_cast<std::uint64_t>(terms))];
    shuffle(rng, m.factors);
    m.factors.front() = -m.factors.front();
    if (rng.coin()) {
      auto& f = m.factors[rng.below(m.factors.size())];
      f = nudge(f, rng.coin() ? 1 : -1);
    }
    s.terms.push_back(std::move(m));
  }
  shuffle(rng, s.terms);
  return s;
}

template <class T>
SumOfProducts<T> cancellation_case(Rng& rng) {
  using F = FpFormat<T>;
  SumOfProducts<T> s;
  switch (rng.below(4)) {
    case 0: {
      // a b - hi - lo == 0, optionally perturbed below lo
      const int e = static_cast<int>(rng.between(-40, 40));
      const T a = random_value<T>(rng, e);
      const T b = random_value<T>(rng, static_cast<int>(rng.between(-40, 40)));
      const T hi = a * b;
      const T lo = std::fma(a, b, -hi);
      s.terms = {{a, b}, {-hi}};
      if (lo != 0) s.terms.push_back({-lo});
      const auto r = rng.below(3);
      if (r == 1 && lo != 0) {
        s.terms.back().factors.front() = nudge(-lo, rng.coin() ? 1 : -1);
      } else if (r == 2) {
        const int low = std::ilogb(lo != 0 ? lo : hi) - static_cast<int>(rng.between(1, 40));
        s.terms.push_back({random_value<T>(rng, low), random_value<T>(rng, 0)});
      }
      break;
    }
    case 1: {
      // (1 + i eps)(1 - j eps) - 1, optionally compensated, scaled by 2^k
      const T scale = pow2<T>(static_cast<int>(rng.between(-20, 20)));
      const auto i = rng.between(0, 8), j = rng.between(0, 8);
      const T x = (1 + static_cast<T>(i) * F::eps) * scale;
      const T y = 1 - static_cast<T>(j) * F::eps;
      s.terms = {{x, y}, {-scale}};
      if (rng.coin()) s.terms.push_back({static_cast<T>(j - i) * F::eps, scale});
      break;
    }
    case 2: {
      // products and their permuted negations, plus an optional tiny term
      const int k = static_cast<int>(rng.between(1, 4));
      for (int t = 0; t < k; ++t) {
        const int n = static_cast<int>(rng.between(1, 3));
        ProductTerm<T> p;
        for (int f = 0; f < n; ++f) p.factors.push_back(random_value<T>(rng, static_cast<int>(rng.between(-30, 30))));
        ProductTerm<T> q = p;
        shuffle(rng, q.factors);
        q.factors.front() = -q.factors.front();
        s.terms.push_back(std::move(p));
        s.terms.push_back(std::move(q));
      }
      if (rng.coin()) {
        s.terms.push_back({random_value<T>(rng, static_cast<int>(rng.between(-200, -100)) / (F::digits > 24 ? 1 : 4))});
      }
      shuffle(rng, s.terms);
      break;
    }
    default: {
      // a b - c d with c d a rounded re-factoring of a b
      const T a = random_value<T>(rng, static_cast<int>(rng.between(-20, 20)));
      const T b = random_value<T>(rng, static_cast<int>(rng.between(-20, 20)));
      const T c = nudge(a, static_cast<int>(rng.between(-2, 2)));
      const T d = (a * b) / c;
      s.terms = {{a, b}, {-c, d}};
      break;
    }
  }
  return s;
}

template <class T>
SumOfProducts<T> random_case(Rng& rng) {
  SumOfProducts<T> s;
  const int terms = static_cast<int>(rng.between(1, 6));
  const std::int64_t limit = FpFormat<T>::log2_sigma - 3 - static_cast<std::int64_t>(bit_length(terms));
  for (int i = 0; i < terms; ++i) {
    const int n = static_cast<int>(rng.between(1, 4));
    for (;;) {
      ProductTerm<T> p;
      for (int f = 0; f < n; ++f) p.factors.push_back(random_bits<T>(rng));
      // same bound as magnitudes_safe, checked per term
      Dyadic v(1);
      bool ok = true;
      for (T a : p.factors) {
        v *= decompose(a);
        if (!v.is_zero() && v.msb() > limit) ok = false;
      }
      if (ok) {
        s.terms.push_back(std::move(p));
        break;
      }
    }
  }
  return s;
}

template <class T>
SumOfProducts<T> separated_case(Rng& rng) {
  const int spread = FpFormat<T>::digits > 24 ? 40 : 8;
  for (;;) {
    SumOfProducts<T> s;
    const int terms = static_cast<int>(rng.between(1, 6));
    for (int i = 0; i < terms; ++i) {
      ProductTerm<T> p;
      const int n = static_cast<int>(rng.between(1, 4));
      for (int f = 0; f < n; ++f) {
        p.factors.push_back(random_value<T>(rng, static_cast<int>(rng.between(-spread, spread))));
      }
      s.terms.push_back(std::move(p));
    }
    if (well_separated(s)) return s;
  }
}

template <class T>
bool has_underflowing_product(const SumOfProducts<T>& s) {
  for (const auto& term : s.terms) {
    const Dyadic p = exact_value(term);
    if (!p.is_zero() && p.msb() < FpFormat<T>::log2_nu) return true;
  }
  return false;
}

}  // namespace

template <class T>
std::vector<AdversarialCase<T>> generate(Family family, std::size_t count, std::uint64_t seed) {
  Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(family) + 1)));
  std::vector<AdversarialCase<T>> cases;
  cases.reserve(count);
  while (cases.size() < count) {
    SumOfProducts<T> s;
    switch (family) {
      case Family::collinear: s = collinear_case<T>(rng); break;
      case Family::near_collinear: s = near_collinear_case<T>(rng); break;
      case Family::underflow: s = underflow_case<T>(rng); break;
      case Family::cancellation: s = cancellation_case<T>(rng); break;
      case Family::random: s = random_case<T>(rng); break;
      case Family::separated: s = separated_case<T>(rng); break;
    }
    bool finite = true;
    for (const auto& t : s.terms) {
      for (T a : t.factors) finite = finite && std::isfinite(a);
    }
    if (!finite || !magnitudes_safe(s)) continue;
    if (family == Family::underflow && !has_underflowing_product(s)) continue;
    const int expected = oracle_sign(s);
    if (family == Family::collinear && expected != 0) continue;
    cases.push_back({std::move(s), expected, family});
  }
  return cases;
}

#define SOSIGN_INSTANTIATE(T)                                                    \
  template Dyadic decompose(T);                                                  \
  template T recompose<T>(const Dyadic&);                                        \
  template Dyadic exact_value(const ProductTerm<T>&);                            \
  template Dyadic exact_value(const SumOfProducts<T>&);                          \
  template Dyadic exact_value(const ScaledNumber<T>&);                           \
  template int oracle_sign(const SumOfProducts<T>&);                             \
  template bool magnitudes_safe(const SumOfProducts<T>&);                        \
  template bool well_separated(const SumOfProducts<T>&);                         \
  template std::vector<AdversarialCase<T>> generate<T>(Family, std::size_t, std::uint64_t); \
  template T random_value<T>(Rng&, int, bool);                                   \
  template T random_bits<T>(Rng&);

SOSIGN_INSTANTIATE(float)
SOSIGN_INSTANTIATE(double)

#undef SOSIGN_INSTANTIATE

}  // namespace sosign::oracle
