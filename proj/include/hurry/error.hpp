#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurry {

enum class ErrorKind {
  // kernel
  UnboundVariable,
  NotAFunction,
  TypeMismatch,
  NotASort,
  ArityMismatch,
  UniverseOverflow,
  NegativeOccurrence,
  BadConstructorConclusion,
  NameClash,
  NonStructuralRecursion,
  IllegalElimination,
  UnknownIdentifier,
  // surface
  SyntaxError,
  ElaborationError,
  UnificationMismatch,
  CannotInferBinder,
  UnknownNotation,
  // proof engine
  TacticFailure,
  NoSuchHypothesis,
  UnificationFailure,
  OpenGoalsRemain,
  KernelRejection,
  NothingToUndo,
  NoProofInProgress,
  IllTypedStatement,
  // decision procedures
  NotAConstructorClash,
  NotSameConstructor,
  NotAnEquality,
  NotAnInductiveHypothesis,
  UnsupportedIndexShape,
  NotPropositional,
  SearchExhausted,
  UnsupportedOperator,
  NormalFormsDiffer,
  NonLinearTerm,
  ContainsSubtraction,
  NotProvable,
  // packages and session
  UnknownPackage,
  LoadCycle,
  OutOfRange,
  Internal,
};

std::string_view to_string(ErrorKind kind);

struct Position {
  int line = 0;
  int column = 0;
  bool valid() const { return line > 0; }
};

/// Every failure in the system is reported through this type; `kind` is the
/// machine-checkable part, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, Position pos = {})
      : std::runtime_error(message), kind_(kind), pos_(pos) {}

  ErrorKind kind() const { return kind_; }
  Position position() const { return pos_; }
  void set_position(Position pos) { pos_ = pos; }

 private:
  ErrorKind kind_;
  Position pos_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace hurry
