#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cylresp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result not representable in the working precision.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double argument)
      : Error(what + " (argument " + std::to_string(argument) + ")"), argument_(argument) {}

  double argument() const noexcept { return argument_; }

 private:
  double argument_;
};

/// A configuration was handed to the wrong solution path (e.g. m = 0 to the 3x3 assembler).
class RoutingError : public Error {
 public:
  using Error::Error;
};

/// Inputs that do not belong together (solution evaluated with a foreign excitation).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The boundary-condition determinant vanished: the excitation sits on a resonance
/// or on one of the excluded singular parameter sets.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, double determinant)
      : Error(what), determinant_(determinant) {}

  double determinant() const noexcept { return determinant_; }

 private:
  double determinant_;
};

/// Zero pivot in the elimination solver.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries the 1-based line number (0 when not applicable).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a semantic rule (duplicates, ordering, ranges).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Sweep configuration problem; names the offending key when there is one.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(key) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace cylresp
