#include "hurry/error.hpp"

namespace hurry {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NotAFunction: return "NotAFunction";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotASort: return "NotASort";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::UniverseOverflow: return "UniverseOverflow";
    case ErrorKind::NegativeOccurrence: return "NegativeOccurrence";
    case ErrorKind::BadConstructorConclusion: return "BadConstructorConclusion";
    case ErrorKind::NameClash: return "NameClash";
    case ErrorKind::NonStructuralRecursion: return "NonStructuralRecursion";
    case ErrorKind::IllegalElimination: return "IllegalElimination";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ElaborationError: return "ElaborationError";
    case ErrorKind::UnificationMismatch: return "UnificationMismatch";
    case ErrorKind::CannotInferBinder: return "CannotInferBinder";
    case ErrorKind::UnknownNotation: return "UnknownNotation";
    case ErrorKind::TacticFailure: return "TacticFailure";
    case ErrorKind::NoSuchHypothesis: return "NoSuchHypothesis";
    case ErrorKind::UnificationFailure: return "UnificationFailure";
    case ErrorKind::OpenGoalsRemain: return "OpenGoalsRemain";
    case ErrorKind::KernelRejection: return "KernelRejection";
    case ErrorKind::NothingToUndo: return "NothingToUndo";
    case ErrorKind::NoProofInProgress: return "NoProofInProgress";
    case ErrorKind::IllTypedStatement: return "IllTypedStatement";
    case ErrorKind::NotAConstructorClash: return "NotAConstructorClash";
    case ErrorKind::NotSameConstructor: return "NotSameConstructor";
    case ErrorKind::NotAnEquality: return "NotAnEquality";
    case ErrorKind::NotAnInductiveHypothesis: return "NotAnInductiveHypothesis";
    case ErrorKind::UnsupportedIndexShape: return "UnsupportedIndexShape";
    case ErrorKind::NotPropositional: return "NotPropositional";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::UnsupportedOperator: return "UnsupportedOperator";
    case ErrorKind::NormalFormsDiffer: return "NormalFormsDiffer";
    case ErrorKind::NonLinearTerm: return "NonLinearTerm";
    case ErrorKind::ContainsSubtraction: return "ContainsSubtraction";
    case ErrorKind::NotProvable: return "NotProvable";
    case ErrorKind::UnknownPackage: return "UnknownPackage";
    case ErrorKind::LoadCycle: return "LoadCycle";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace hurry
