#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sosign/eft.hpp"
#include "sosign/expr_io.hpp"
#include "sosign/oracle.hpp"
#include "sosign/predicates.hpp"
#include "sosign/sign.hpp"

namespace py = pybind11;
using namespace sosign;

namespace {

using Terms = std::vector<std::vector<double>>;

template <class T>
T narrow(double x) {
  const T y = static_cast<T>(x);
  if (static_cast<double>(y) != x && !std::isnan(x)) {
    throw py::value_error("value " + std::to_string(x) + " is not representable in " +
                          std::string(to_string(FpFormat<T>::format)));
  }
  return y;
}

template <class T>
SumOfProducts<T> build(const Terms& terms) {
  SumOfProducts<T> s;
  s.terms.reserve(terms.size());
  for (const auto& t : terms) {
    std::vector<T> f;
    f.reserve(t.size());
    for (double x : t) f.push_back(narrow<T>(x));
    s.terms.emplace_back(std::move(f));
  }
  return s;
}

template <class T>
Terms unbuild(const SumOfProducts<T>& s) {
  Terms out;
  for (const auto& t : s.terms) out.emplace_back(t.factors.begin(), t.factors.end());
  return out;
}

/// Calls f.template operator()<T>() for the named format.
template <class F>
auto by_format(const std::string& format, F&& f) {
  return parse_format(format) == Format::binary64 ? f.template operator()<double>()
                                                  : f.template operator()<float>();
}

py::object quick_result(SignResult r) {
  switch (r) {
    case SignResult::negative: return py::int_(-1);
    case SignResult::zero: return py::int_(0);
    case SignResult::positive: return py::int_(1);
    default: return py::none();
  }
}

template <class T>
int run_predicate(Predicate p, const std::vector<std::vector<double>>& points, Backend backend) {
  const auto n = static_cast<std::size_t>(point_count(p));
  const auto d = static_cast<std::size_t>(dimension(p));
  if (points.size() != n) throw py::value_error(std::string(to_string(p)) + " takes " + std::to_string(n) + " points");
  std::vector<T> coords;
  for (const auto& pt : points) {
    if (pt.size() != d) throw py::value_error("points must have " + std::to_string(d) + " coordinates");
    for (double x : pt) coords.push_back(narrow<T>(x));
  }
  return sign(predicate_expression<T>(p, coords), backend).sign;
}

}  // namespace

PYBIND11_MODULE(_sosign, m) {
  m.doc() = "Exact sign of sums of products of floating-point numbers";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ArithmeticError);
  py::register_exception<OverflowError>(m, "OverflowError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<NonFiniteError>(m, "NonFiniteError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("hardware_rounding_available", &hardware_rounding_available);

  m.def(
      "sign",
      [](const Terms& terms, const std::string& format, const std::string& backend) {
        return by_format(format, [&]<class T>() {
          const auto d = sign(build<T>(terms), parse_backend(backend));
          return std::make_tuple(d.sign, std::string(to_string(d.method)));
        });
      },
      py::arg("terms"), py::arg("format") = "binary64", py::arg("backend") = "emulated",
      "Sign of the exact sum and the stage that decided it, as (sign, method).");

  m.def(
      "quick_sign",
      [](const Terms& terms, const std::string& format, const std::string& backend) {
        return by_format(format, [&]<class T>() {
          return quick_result(evaluate_quick(build<T>(terms), parse_backend(backend)));
        });
      },
      py::arg("terms"), py::arg("format") = "binary64", py::arg("backend") = "emulated",
      "Interval filter alone: -1, 1, or None when it cannot decide.");

  m.def(
      "robust_sign",
      [](const Terms& terms, const std::string& format, const std::string& backend) {
        return by_format(format, [&]<class T>() {
          const auto s = build<T>(terms);
          validate(s);
          return evaluate_robust(s, parse_backend(backend));
        });
      },
      py::arg("terms"), py::arg("format") = "binary64", py::arg("backend") = "emulated");

  m.def(
      "exact_sign",
      [](const Terms& terms, const std::string& format) {
        return by_format(format, [&]<class T>() { return oracle::oracle_sign(build<T>(terms)); });
      },
      py::arg("terms"), py::arg("format") = "binary64", "Sign computed with arbitrary precision integers.");

  m.def(
      "capacity_load",
      [](const Terms& terms) { return capacity_load(build<double>(terms)); }, py::arg("terms"));

  for (Predicate p : {Predicate::orient2d, Predicate::orient3d, Predicate::incircle}) {
    m.def(
        std::string(to_string(p)).c_str(),
        [p](const std::vector<std::vector<double>>& points, const std::string& format, const std::string& backend) {
          return by_format(format, [&]<class T>() { return run_predicate<T>(p, points, parse_backend(backend)); });
        },
        py::arg("points"), py::arg("format") = "binary64", py::arg("backend") = "emulated");
  }

  m.def(
      "split_sub",
      [](double a, double b, const std::string& format) {
        return by_format(format, [&]<class T>() {
          const T x = narrow<T>(a), y = narrow<T>(b);
          if (!(0 < x && x < y)) throw py::value_error("split_sub needs 0 < a < b");
          const auto r = split_sub<EmulatedRoundUp<T>>(x, y);
          return std::make_tuple(static_cast<double>(r.c), static_cast<double>(r.e));
        });
      },
      py::arg("a"), py::arg("b"), py::arg("format") = "binary64", "(c, e) with b - a == c - e.");

  m.def(
      "split_prod",
      [](double a, double b, const std::string& format) {
        return by_format(format, [&]<class T>() {
          const T x = narrow<T>(a), y = narrow<T>(b);
          if (!(x > 0 && y > 0)) throw py::value_error("split_prod needs positive operands");
          const auto r = split_prod<EmulatedRoundUp<T>>(x, y);
          return std::make_tuple(static_cast<double>(r.c), static_cast<double>(r.d), r.scale);
        });
      },
      py::arg("a"), py::arg("b"), py::arg("format") = "binary64",
      "(c, d, k) with a * b == (c - d) / sigma**k.");

  m.def(
      "constants",
      [](const std::string& format) {
        return by_format(format, [&]<class T>() {
          using F = FpFormat<T>;
          py::dict d;
          d["eps"] = static_cast<double>(F::eps);
          d["nu"] = static_cast<double>(F::nu);
          d["tau"] = static_cast<double>(F::tau);
          d["sigma"] = static_cast<double>(F::sigma);
          d["sigma_tau"] = static_cast<double>(F::sigma_tau);
          d["max"] = static_cast<double>(F::max);
          d["capacity"] = F::inv_eps;
          return d;
        });
      },
      py::arg("format") = "binary64");

  m.def(
      "generate",
      [](const std::string& family, std::size_t count, std::uint64_t seed, const std::string& format) {
        return by_format(format, [&]<class T>() {
          std::vector<std::tuple<Terms, int>> out;
          for (const auto& c : oracle::generate<T>(oracle::parse_family(family), count, seed)) {
            out.emplace_back(unbuild(c.expression), c.expected_sign);
          }
          return out;
        });
      },
      py::arg("family"), py::arg("count"), py::arg("seed") = 1, py::arg("format") = "binary64",
      "Test expressions with their exact signs.");

  m.def(
      "parse",
      [](const std::string& text, const std::string& format, bool allow_decimal) {
        return by_format(format, [&]<class T>() {
          std::istringstream in(text);
          std::vector<std::tuple<Terms, py::object>> out;
          for (const auto& e : parse_expressions<T>(in, ParseOptions{allow_decimal})) {
            out.emplace_back(unbuild(e.expression), e.expected ? py::object(py::int_(*e.expected)) : py::none());
          }
          return out;
        });
      },
      py::arg("text"), py::arg("format") = "binary64", py::arg("allow_decimal") = false,
      "Expressions in the text format, with their expected signs when annotated.");

  m.def(
      "format_expression",
      [](const Terms& terms, const std::string& format) {
        return by_format(format, [&]<class T>() { return format_expression(build<T>(terms)); });
      },
      py::arg("terms"), py::arg("format") = "binary64");
}
