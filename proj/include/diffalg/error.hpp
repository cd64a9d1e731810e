#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffalg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// A ring homomorphism was applied to an element whose denominator it sends to 0.
class DenominatorVanishes : public Error {
 public:
  explicit DenominatorVanishes(const std::string& what) : Error(what) {}
};

/// Operands live over fields with a different number of variables.
class FieldMismatch : public Error {
 public:
  explicit FieldMismatch(const std::string& what) : Error(what) {}
};

/// Two objects (modules, structures, matrices) have incompatible shapes or bases.
class StructureMismatch : public Error {
 public:
  explicit StructureMismatch(const std::string& what) : Error(what) {}
};

/// Malformed textual input. `position` is a 0-based byte offset into the
/// parsed string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position, std::string expected)
      : Error(what + " at position " + std::to_string(position) + " (expected " + expected + ")"),
        position_(position),
        expected_(std::move(expected)) {}
  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace diffalg
