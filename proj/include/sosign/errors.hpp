#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sosign {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exact result of a round-up operation exceeds the largest finite value.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// The exact result lies below the most negative finite value.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The expression violates the heap capacity bound.
class CapacityError : public Error {
 public:
  CapacityError(std::uint64_t load, std::uint64_t limit)
      : Error("capacity exceeded: load " + std::to_string(load) +
              " is not below the limit 1/eps = " + std::to_string(limit)),
        load_(load),
        limit_(limit) {}

  std::uint64_t load() const noexcept { return load_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t load_;
  std::uint64_t limit_;
};

/// A factor is NaN or infinite, or a product has no factors.
class NonFiniteError : public Error {
 public:
  NonFiniteError(std::size_t term, std::size_t factor, const std::string& what)
      : Error(what + " (term " + std::to_string(term) + ", factor " +
              std::to_string(factor) + ")"),
        term_(term),
        factor_(factor) {}

  std::size_t term() const noexcept { return term_; }
  std::size_t factor() const noexcept { return factor_; }

 private:
  std::size_t term_;
  std::size_t factor_;
};

/// Malformed expression or point file.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        message_(what) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// The description without the position prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace sosign
