#pragma once

#include <stdexcept>
#include <string>

namespace pclab {

// Error kinds. Input errors map to CLI exit code 2, computational ones to 1.
enum class ErrorKind {
  // input / validation
  Syntax,
  UnknownVariable,
  InvalidArgument,
  // arithmetic
  NotPrime,
  DivisionByZero,
  BadPrime,
  VariableMismatch,
  // solvers
  SingularPoint,
  OrderTooSmall,
  PoleOnLeaf,
  NotARoot,
  SingularBranch,
  BadParams,
  SingularParameter,
  NotFlat,
  // analysis
  EmptyInput,
  NotPIntegral,
  NotASolution,
  DegreeBudgetExceeded,
  ReducibleParameters,
  PoleCollision,
  NotFuchsian,
  ConsistencyViolation,
};

const char* kind_name(ErrorKind kind);

// True for errors caused by malformed input rather than by the mathematics.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Syntax error carrying the byte offset into the parsed text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error(ErrorKind::Syntax, what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace pclab
