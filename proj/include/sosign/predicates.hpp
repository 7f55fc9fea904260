#pragma once

// Geometric predicates as signs of determinants expanded over the raw input
// coordinates (no coordinate differences, which would round).
//
//   orient2d(a, b, c)      +1 when c is left of the directed line ab
//   orient3d(a, b, c, d)   +1 when d is below the plane of a, b, c, where
//                          "below" means a, b, c appear counterclockwise
//                          when seen from above
//   incircle(a, b, c, d)   +1 when d is inside the circle through the
//                          counterclockwise triangle a, b, c

#include <cstdint>
#include <span>
#include <string_view>

#include "sosign/rounding.hpp"
#include "sosign/sign.hpp"

namespace sosign {

template <class T>
struct Point2 {
  T x;
  T y;
};

template <class T>
struct Point3 {
  T x;
  T y;
  T z;
};

enum class Predicate { orient2d, orient3d, incircle };

std::string_view to_string(Predicate p);
Predicate parse_predicate(std::string_view name);
/// Number of points and coordinates per point the predicate takes.
int point_count(Predicate p);
int dimension(Predicate p);

namespace detail {

struct Coordinate {
  std::uint8_t point;
  std::uint8_t axis;
};

/// One signed monomial of a determinant expansion.
struct Monomial {
  std::int8_t sign;
  std::uint8_t size;
  Coordinate factors[4];
};

#include "sosign/detail/expansions.inc"

}  // namespace detail

std::span<const detail::Monomial> expansion(Predicate p);

/// Builds the sum of products for a predicate from a flat list of
/// point_count(p) * dimension(p) coordinates. Negative monomials negate their
/// first factor, which is exact.
template <class T>
SumOfProducts<T> predicate_expression(Predicate p, std::span<const T> coordinates);

extern template SumOfProducts<float> predicate_expression(Predicate, std::span<const float>);
extern template SumOfProducts<double> predicate_expression(Predicate, std::span<const double>);

template <class T>
SumOfProducts<T> orient2d_expression(const Point2<T>& a, const Point2<T>& b, const Point2<T>& c) {
  const T xs[] = {a.x, a.y, b.x, b.y, c.x, c.y};
  return predicate_expression<T>(Predicate::orient2d, xs);
}

template <class T>
SumOfProducts<T> orient3d_expression(const Point3<T>& a, const Point3<T>& b, const Point3<T>& c,
                                     const Point3<T>& d) {
  const T xs[] = {a.x, a.y, a.z, b.x, b.y, b.z, c.x, c.y, c.z, d.x, d.y, d.z};
  return predicate_expression<T>(Predicate::orient3d, xs);
}

template <class T>
SumOfProducts<T> incircle_expression(const Point2<T>& a, const Point2<T>& b, const Point2<T>& c,
                                     const Point2<T>& d) {
  const T xs[] = {a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y};
  return predicate_expression<T>(Predicate::incircle, xs);
}

template <class T>
int orient2d(const Point2<T>& a, const Point2<T>& b, const Point2<T>& c,
             Backend backend = Backend::emulated) {
  return sign(orient2d_expression(a, b, c), backend).sign;
}

template <class T>
int orient3d(const Point3<T>& a, const Point3<T>& b, const Point3<T>& c, const Point3<T>& d,
             Backend backend = Backend::emulated) {
  return sign(orient3d_expression(a, b, c, d), backend).sign;
}

template <class T>
int incircle(const Point2<T>& a, const Point2<T>& b, const Point2<T>& c, const Point2<T>& d,
             Backend backend = Backend::emulated) {
  return sign(incircle_expression(a, b, c, d), backend).sign;
}

}  // namespace sosign
