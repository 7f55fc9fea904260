#include "sosign/predicates.hpp"

#include <string>

namespace sosign {

std::string_view to_string(Predicate p) {
  switch (p) {
    case Predicate::orient2d: return "orient2d";
    case Predicate::orient3d: return "orient3d";
    case Predicate::incircle: return "incircle";
  }
  return "?";
}

Predicate parse_predicate(std::string_view name) {
  if (name == "orient2d") return Predicate::orient2d;
  if (name == "orient3d") return Predicate::orient3d;
  if (name == "incircle") return Predicate::incircle;
  throw Error("unknown predicate '" + std::string(name) + "'");
}

int point_count(Predicate p) { return p == Predicate::orient2d ? 3 : 4; }

int dimension(Predicate p) { return p == Predicate::orient3d ? 3 : 2; }

std::span<const detail::Monomial> expansion(Predicate p) {
  switch (p) {
    case Predicate::orient2d: return detail::kOrient2d;
    case Predicate::orient3d: return detail::kOrient3d;
    case Predicate::incircle: return detail::kIncircle;
  }
  return {};
}

template <class T>
SumOfProducts<T> predicate_expression(Predicate p, std::span<const T> coordinates) {
  const int dim = dimension(p);
  if (coordinates.size() != static_cast<std::size_t>(point_count(p) * dim)) {
    throw Error(std::string(to_string(p)) + " takes " + std::to_string(point_count(p) * dim) +
                " coordinates");
  }
  SumOfProducts<T> s;
  const auto monomials = expansion(p);
  s.terms.reserve(monomials.size());
  for (const auto& m : monomials) {
    ProductTerm<T> term;
    term.factors.reserve(m.size);
    for (int k = 0; k < m.size; ++k) {
      term.factors.push_back(coordinates[m.factors[k].point * dim + m.factors[k].axis]);
    }
    if (m.sign < 0) term.factors.front() = -term.factors.front();
    s.terms.push_back(std::move(term));
  }
  return s;
}

template SumOfProducts<float> predicate_expression(Predicate, std::span<const float>);
template SumOfProducts<double> predicate_expression(Predicate, std::span<const double>);

}  // namespace sosign
