#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shqr {

  /// Root of every exception thrown by the library.
  class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  /// A scalar argument lies outside the operation's domain.
  class DomainError : public Error {
  public:
    using Error::Error;
  };

  /// Matrix or list dimensions are incompatible with the operation.
  class DimensionError : public Error {
  public:
    using Error::Error;
  };

  /// A documented precondition on the input matrix does not hold.
  class PreconditionError : public Error {
  public:
    using Error::Error;
  };

  /// A randomized step hit its (bounded-probability) failure event.
  /// Callers may retry with fresh randomness.
  class ProbabilisticFailure : public Error {
  public:
    using Error::Error;
  };

  /// A deflation loop ran past its iteration budget.
  class BudgetExceeded : public ProbabilisticFailure {
  public:
    using ProbabilisticFailure::ProbabilisticFailure;
  };

  /// Oracle-side: a linear system is singular at oracle precision.
  class SingularityError : public Error {
  public:
    using Error::Error;
  };

  /// Input text could not be parsed.
  class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
  };

} // namespace shqr
