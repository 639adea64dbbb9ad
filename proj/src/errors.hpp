#pragma once

#include <stdexcept>
#include <string>

namespace pclass2 {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A matrix required to be invertible is not.
class SingularMatrix : public Error {
public:
  using Error::Error;
};

/// A search or enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// Catalog lookup with a name that is not in the catalog.
class UnknownName : public Error {
public:
  using Error::Error;
};

/// A central factor matched none of the catalog indecomposables.
class UnknownFactor : public Error {
public:
  using Error::Error;
};

/// Invalid argument or violated construction invariant.
class ValueError : public Error {
public:
  using Error::Error;
};

/// Gluing map shape does not match the factor or product rank.
class RankMismatch : public Error {
public:
  using Error::Error;
};

/// Glued derived-group images fail to span the product's derived space.
class SpanDeficient : public Error {
public:
  using Error::Error;
};

enum class ParseErrorKind {
  Syntax,
  DuplicateEdge,
  IndexOutOfRange,
  ZeroFlow,
  NotPrime,
  EvenPrime,
};

const char* parse_error_kind_name(ParseErrorKind kind);

/// Rejection of a .fdg document; carries the offending line number (1-based).
class ParseError : public Error {
public:
  ParseError(ParseErrorKind kind, int line, const std::string& message);
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

private:
  ParseErrorKind kind_;
  int line_;
};

}  // namespace pclass2
