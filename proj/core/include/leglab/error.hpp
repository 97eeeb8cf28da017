#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace leglab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or type-invariant violation (non-finite input, bad sizes, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Two objects that must share a BaseDomain do not.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

// d_xi S has a non-isolated or non-transverse zero.
class DegenerateRootError : public Error {
 public:
  using Error::Error;
};

// An inner maximum of the minimax scan sits on the auxiliary box boundary
// where the perturbation is still nonzero.
class BoxTooSmall : public Error {
 public:
  using Error::Error;
};

// c+ == c- but the generated Legendrian is not a constant graph.
class LemmaViolation : public Error {
 public:
  using Error::Error;
};

// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string field)
      : Error(format(what, line, field)), line_(line), field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            const std::string& field) {
    std::string msg = "parse error";
    if (line > 0) msg += " at line " + std::to_string(line);
    if (!field.empty()) msg += " (field '" + field + "')";
    return msg + ": " + what;
  }

  std::size_t line_;
  std::string field_;
};

}  // namespace leglab
