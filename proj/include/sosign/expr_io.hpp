#pragma once

// Text form of expressions: one expression per line, factors separated by
// whitespace, products by '|'. Numbers are hex floats (bit-exact) or decimals.
// '#' starts a comment; "# expected: <sign>" tags the next expression.

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sosign/expr.hpp"

namespace sosign {

struct ParseOptions {
  /// Round inexact decimal literals to nearest instead of rejecting them.
  bool allow_decimal = false;
};

template <class T>
struct ParsedExpression {
  std::size_t line;
  SumOfProducts<T> expression;
  std::optional<int> expected;
};

template <class T>
struct ParsedPoints {
  std::size_t line;
  std::vector<T> coordinates;
};

/// Exact decimal and hex literals are always accepted; a decimal that is not
/// representable needs allow_decimal and sets *rounded. Throws ParseError with
/// column 1 on failure (callers add positions).
template <class T>
T parse_number(std::string_view token, const ParseOptions& options = {}, bool* rounded = nullptr);

template <class T>
std::vector<ParsedExpression<T>> parse_expressions(std::istream& in, const ParseOptions& options = {},
                                                   std::size_t* rounded = nullptr);

template <class T>
std::vector<ParsedPoints<T>> parse_points(std::istream& in, const ParseOptions& options = {},
                                          std::size_t* rounded = nullptr);

/// Canonical hex float, e.g. 0x1.8p-1; parses back to the same bits.
template <class T>
std::string format_number(T x);

template <class T>
std::string format_expression(const SumOfProducts<T>& s);

/// "-1", "0", "1"
std::string_view sign_text(int sign);
/// Accepts -1, 0, 1, +1.
std::optional<int> parse_sign(std::string_view text);

}  // namespace sosign
