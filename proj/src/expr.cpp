#include "sosign/expr.hpp"

#include <cmath>
#include <limits>

namespace sosign {

template <class T>
std::uint64_t capacity_load(const SumOfProducts<T>& s) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t load = 0;
  for (const auto& term : s.terms) {
    const std::size_t n = term.size();
    std::uint64_t add = 1;
    if (n > 1) {
      if (n - 2 >= 63) return kMax;
      add = std::uint64_t{1} << (n - 2);
    }
    if (load > kMax - add) return kMax;
    load += add;
  }
  return load;
}

template <class T>
void validate(const SumOfProducts<T>& s) {
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    const auto& f = s.terms[i].factors;
    if (f.empty()) throw NonFiniteError(i, 0, "product with no factors");
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (!std::isfinite(f[j])) throw NonFiniteError(i, j, "non-finite factor");
    }
  }
  const std::uint64_t load = capacity_load(s);
  if (load >= FpFormat<T>::inv_eps) throw CapacityError(load, FpFormat<T>::inv_eps);
}

template std::uint64_t capacity_load(const SumOfProducts<float>&);
template std::uint64_t capacity_load(const SumOfProducts<double>&);
template void validate(const SumOfProducts<float>&);
template void validate(const SumOfProducts<double>&);

}  // namespace sosign
