#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltlfmc
{
  /// Base class of every error raised by the library.
  class error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// Malformed text input (formula, system, machine or dump files).
  class parse_error : public error
  {
  public:
    parse_error(const std::string& msg, std::size_t line, std::size_t column)
      : error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line), column_(column)
    {
    }

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
  };

  /// Structurally well-formed input that breaks a model invariant.
  class validation_error : public error
  {
  public:
    using error::error;
  };

  /// Atom not declared in the alphabet, or mismatched alphabets.
  class alphabet_error : public error
  {
  public:
    using error::error;
  };

  /// Desk-scale guard tripped (too many props, states, paths...).
  class bound_error : public error
  {
  public:
    using error::error;
  };

  /// Formula outside the syntactic fragment an operation accepts.
  class fragment_error : public error
  {
  public:
    using error::error;
  };
}
