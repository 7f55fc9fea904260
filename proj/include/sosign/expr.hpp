#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "sosign/errors.hpp"
#include "sosign/format.hpp"

namespace sosign {

/// The product of its factors.
template <class T>
struct ProductTerm {
  std::vector<T> factors;

  ProductTerm() = default;
  ProductTerm(std::initializer_list<T> f) : factors(f) {}
  explicit ProductTerm(std::vector<T> f) : factors(std::move(f)) {}

  std::size_t size() const noexcept { return factors.size(); }
  friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
};

/// The sum of its product terms; the empty sum is zero.
template <class T>
struct SumOfProducts {
  std::vector<ProductTerm<T>> terms;

  SumOfProducts() = default;
  SumOfProducts(std::initializer_list<ProductTerm<T>> t) : terms(t) {}
  explicit SumOfProducts(std::vector<ProductTerm<T>> t) : terms(std::move(t)) {}

  std::size_t size() const noexcept { return terms.size(); }
  friend bool operator==(const SumOfProducts&, const SumOfProducts&) = default;
};

/// Upper bound on the number of scaled numbers either heap of the robust
/// algorithm can hold: one per single-factor term plus 2^(n-2) per term with
/// n > 1 factors. Saturates at UINT64_MAX.
template <class T>
std::uint64_t capacity_load(const SumOfProducts<T>& s);

/// Throws NonFiniteError on a NaN/infinite factor or an empty product and
/// CapacityError unless capacity_load(s) < 1/eps.
template <class T>
void validate(const SumOfProducts<T>& s);

extern template std::uint64_t capacity_load(const SumOfProducts<float>&);
extern template std::uint64_t capacity_load(const SumOfProducts<double>&);
extern template void validate(const SumOfProducts<float>&);
extern template void validate(const SumOfProducts<double>&);

}  // namespace sosign
