#include "sosign/expr_io.hpp"

#include <gmpxx.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "sosign/oracle.hpp"

namespace sosign {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

[[noreturn]] void bad(std::string what) { throw ParseError(0, 1, std::move(what)); }

/// Parses [+-]digits in base 10 for exponents; saturates far outside any range.
long parse_exponent(std::string_view s, std::string_view token) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad("missing exponent in '" + std::string(token) + "'");
  long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') bad("malformed exponent in '" + std::string(token) + "'");
    v = std::min(v * 10 + (c - '0'), 100000000L);
  }
  return negative ? -v : v;
}

template <class T>
T parse_hex(std::string_view token, bool negative, std::string_view body) {
  // body: digits[.digits][p exp]
  mpz_class mantissa = 0;
  long scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  std::size_t i = 0;
  for (; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '.') {
      if (seen_point) bad("malformed number '" + std::string(token) + "'");
      seen_point = true;
      continue;
    }
    if (c == 'p' || c == 'P') break;
    const int d = hex_digit(c);
    if (d < 0) bad("malformed number '" + std::string(token) + "'");
    mantissa = mantissa * 16 + d;
    any_digit = true;
    if (seen_point) scale -= 4;
  }
  if (!any_digit) bad("malformed number '" + std::string(token) + "'");
  if (i < body.size()) scale += parse_exponent(body.substr(i + 1), token);
  if (negative) mantissa = -mantissa;
  const Dyadic exact(std::move(mantissa), scale);
  try {
    const T x = oracle::recompose<T>(exact);
    return negative && x == 0 ? -x : x;
  } catch (const Error&) {
    bad("'" + std::string(token) + "' is not representable in " +
        std::string(to_string(FpFormat<T>::format)));
  }
}

template <class T>
T parse_decimal(std::string_view token, const ParseOptions& options, bool* rounded) {
  // Validate the grammar and build the exact rational value N * 10^k.
  std::string_view s = token;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  mpz_class digits = 0;
  long k = 0;
  bool seen_point = false;
  bool any_digit = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.') {
      if (seen_point) bad("malformed number '" + std::string(token) + "'");
      seen_point = true;
      continue;
    }
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') bad("malformed number '" + std::string(token) + "'");
    digits = digits * 10 + (c - '0');
    any_digit = true;
    if (seen_point) --k;
  }
  if (!any_digit) bad("malformed number '" + std::string(token) + "'");
  if (i < s.size()) k += parse_exponent(s.substr(i + 1), token);

  const std::string text(token);
  char* end = nullptr;
  T x;
  if constexpr (std::is_same_v<T, float>) {
    x = std::strtof(text.c_str(), &end);
  } else {
    x = std::strtod(text.c_str(), &end);
  }
  if (!std::isfinite(x)) bad("'" + text + "' overflows " + std::string(to_string(FpFormat<T>::format)));

  bool exact = false;
  if (digits == 0) {
    exact = true;
  } else if (x != 0 && std::labs(k) < 2000) {
    mpq_class value(digits);
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(k)));
    if (k >= 0) {
      value *= ten;
    } else {
      value /= ten;
    }
    const Dyadic d = oracle::decompose(std::fabs(x));
    mpq_class r(d.mantissa());
    if (d.exponent() >= 0) {
      mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(d.exponent()));
    } else {
      mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-d.exponent()));
    }
    exact = r == value;
  }
  if (!exact) {
    if (!options.allow_decimal) {
      bad("decimal '" + text + "' is not exactly representable (use a hex float or --allow-decimal)");
    }
    if (rounded != nullptr) *rounded = true;
  }
  return negative && x == 0 ? T(-0.0) : x;
}

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> split_tokens(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (is_space(line[i])) {
      ++i;
      continue;
    }
    if (line[i] == '|') {
      out.push_back({line.substr(i, 1), offset + i + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i]) && line[i] != '|') ++i;
    out.push_back({line.substr(start, i - start), offset + start + 1});
  }
  return out;
}

template <class T>
T parse_at(const Token& t, std::size_t line, const ParseOptions& options, std::size_t* rounded) {
  bool r = false;
  try {
    const T x = parse_number<T>(t.text, options, &r);
    if (r && rounded != nullptr) ++*rounded;
    return x;
  } catch (const ParseError& e) {
    throw ParseError(line, t.column, e.message());
  }
}

/// Splits off a comment; returns the expected-sign tag if the comment is one.
std::optional<int> take_comment(std::string_view& content, std::size_t line) {
  const auto hash = content.find('#');
  if (hash == std::string_view::npos) return std::nullopt;
  std::string_view comment = trim(content.substr(hash + 1));
  content = content.substr(0, hash);
  constexpr std::string_view tag = "expected:";
  if (comment.substr(0, tag.size()) != tag) return std::nullopt;
  const std::string_view value = trim(comment.substr(tag.size()));
  const auto sign = parse_sign(value);
  if (!sign) throw ParseError(line, hash + 1, "bad expected sign '" + std::string(value) + "'");
  return sign;
}

}  // namespace

template <class T>
T parse_number(std::string_view token, const ParseOptions& options, bool* rounded) {
  if (rounded != nullptr) *rounded = false;
  if (token.empty()) bad("empty number");
  std::string_view body = token;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
    return parse_hex<T>(token, negative, body.substr(2));
  }
  return parse_decimal<T>(token, options, rounded);
}

template <class T>
std::vector<ParsedExpression<T>> parse_expressions(std::istream& in, const ParseOptions& options,
                                                   std::size_t* rounded) {
  std::vector<ParsedExpression<T>> out;
  std::optional<int> pending;
  std::string raw;
  std::size_t line = 0;
  if (rounded != nullptr) *rounded = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view content = raw;
    if (auto tag = take_comment(content, line)) pending = tag;
    if (trim(content).empty()) continue;

    SumOfProducts<T> s;
    ProductTerm<T> term;
    std::size_t bar_column = 1;
    auto close = [&](std::size_t column) {
      if (term.factors.empty()) throw ParseError(line, column, "empty product");
      s.terms.push_back(std::move(term));
      term = {};
    };
    for (const Token& t : split_tokens(content, 0)) {
      if (t.text == "|") {
        close(t.column);
        bar_column = t.column;
        continue;
      }
      term.factors.push_back(parse_at<T>(t, line, options, rounded));
    }
    close(term.factors.empty() ? bar_column : 1);
    out.push_back({line, std::move(s), pending});
    pending.reset();
  }
  return out;
}

template <class T>
std::vector<ParsedPoints<T>> parse_points(std::istream& in, const ParseOptions& options,
                                          std::size_t* rounded) {
  std::vector<ParsedPoints<T>> out;
  std::string raw;
  std::size_t line = 0;
  if (rounded != nullptr) *rounded = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view content = raw;
    content = content.substr(0, content.find('#'));
    if (trim(content).empty()) continue;
    ParsedPoints<T> p{line, {}};
    for (const Token& t : split_tokens(content, 0)) {
      if (t.text == "|") throw ParseError(line, t.column, "unexpected '|' in point list");
      p.coordinates.push_back(parse_at<T>(t, line, options, rounded));
    }
    out.push_back(std::move(p));
  }
  return out;
}

template <class T>
std::string format_number(T x) {
  char buf[64];
  const bool negative = std::signbit(x);
  const T m = std::fabs(x);
  std::string body;
  if (m != 0 && m < FpFormat<T>::nu) {
    // Subnormals print with a leading 1 like normal numbers: format the value
    // scaled into the normal range, then undo the scaling in the exponent.
    constexpr int shift = 64;
    const auto r = std::to_chars(buf, buf + sizeof buf, std::ldexp(m, shift), std::chars_format::hex);
    body.assign(buf, r.ptr);
    const auto p = body.find('p');
    int e = 0;
    std::from_chars(body.data() + p + 1 + (body[p + 1] == '+'), body.data() + body.size(), e);
    body = body.substr(0, p + 1) + std::to_string(e - shift);
  } else {
    const auto r = std::to_chars(buf, buf + sizeof buf, m, std::chars_format::hex);
    body.assign(buf, r.ptr);
  }
  return (negative ? "-0x" : "0x") + body;
}

template <class T>
std::string format_expression(const SumOfProducts<T>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    if (i > 0) out += " | ";
    for (std::size_t j = 0; j < s.terms[i].factors.size(); ++j) {
      if (j > 0) out += ' ';
      out += format_number(s.terms[i].factors[j]);
    }
  }
  return out;
}

std::string_view sign_text(int sign) {
  return sign < 0 ? "-1" : sign > 0 ? "1" : "0";
}

std::optional<int> parse_sign(std::string_view text) {
  if (text == "-1") return -1;
  if (text == "0") return 0;
  if (text == "1" || text == "+1") return 1;
  return std::nullopt;
}

#define SOSIGN_INSTANTIATE(T)                                                                   \
  template T parse_number<T>(std::string_view, const ParseOptions&, bool*);                     \
  template std::vector<ParsedExpression<T>> parse_expressions<T>(std::istream&,                 \
                                                                 const ParseOptions&, std::size_t*); \
  template std::vector<ParsedPoints<T>> parse_points<T>(std::istream&, const ParseOptions&,     \
                                                        std::size_t*);                          \
  template std::string format_number(T);                                                        \
  template std::string format_expression(const SumOfProducts<T>&);

SOSIGN_INSTANTIATE(float)
SOSIGN_INSTANTIATE(double)

#undef SOSIGN_INSTANTIATE

}  // namespace sosign
