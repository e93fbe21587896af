#include "pclab/error.hpp"

namespace pclab {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::OrderTooSmall: return "OrderTooSmall";
    case ErrorKind::PoleOnLeaf: return "PoleOnLeaf";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::SingularBranch: return "SingularBranch";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::SingularParameter: return "SingularParameter";
    case ErrorKind::NotFlat: return "NotFlat";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotPIntegral: return "NotPIntegral";
    case ErrorKind::NotASolution: return "NotASolution";
    case ErrorKind::DegreeBudgetExceeded: return "DegreeBudgetExceeded";
    case ErrorKind::ReducibleParameters: return "ReducibleParameters";
    case ErrorKind::PoleCollision: return "PoleCollision";
    case ErrorKind::NotFuchsian: return "NotFuchsian";
    case ErrorKind::ConsistencyViolation: return "ConsistencyViolation";
  }
  return "Error";
}

bool is_input_error(ErrorKind kind) {
  return kind == ErrorKind::Syntax || kind == ErrorKind::UnknownVariable ||
         kind == ErrorKind::InvalidArgument;
}

}  // namespace pclab
