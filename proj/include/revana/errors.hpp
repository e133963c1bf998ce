#ifndef REVANA_ERRORS_HPP
#define REVANA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace revana {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller-side problems: malformed files, bad labels, invalid parameters.
/// The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Data-dependent degeneracies discovered during analysis.
/// The CLI maps these to exit code 3.
class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(std::string message, long row, std::string column)
      : InputError(std::move(message)), row_(row), column_(std::move(column)) {}
  long row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  long row_;
  std::string column_;
};

class EmptyFile : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class SubsetCeilingExceeded : public InputError {
 public:
  using InputError::InputError;
};

class RankDeficient : public DataError {
 public:
  using DataError::DataError;
};

class ZeroVariance : public DataError {
 public:
  explicit ZeroVariance(const std::string& column)
      : DataError("column '" + column + "' has zero variance"), column_(column) {}
  ZeroVariance(const std::string& column, const std::string& message)
      : DataError(message), column_(column) {}
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class DegenerateBaseline : public DataError {
 public:
  using DataError::DataError;
};

class EmptyCell : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace revana

#endif
