#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lattika {

enum class ErrorKind {
  CyclicCovers,
  NotALattice,
  Unbounded,
  TooLarge,
  BadInput,
  EmptyGeneratorSet,
  MixedLattices,
  NotAFilterResult,
  ImproperFilter,
  NotAFilter,
  NotVeeClosed,
  DisjointnessViolated,
  NonDistributive,
  SaturationNotFilter,
  NoPrimeMaximum,
  EmptyFamily,
  NotAllSFilters,
  NotAnSFilter,
  SNotContained,
  NotAHom,
  NotTopPreserving,
  NotComplemented,
  NotOnto,
  KernelNotContained,
  QuotientOrderIllDefined,
  ModulusNotContained,
  ArityMismatch,
  UnknownName,
  BadParams,
  ParseError,
  EmptyCatalog,
  UnknownTheorem,
  UnknownHypothesis,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::CyclicCovers: return "CyclicCovers";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::EmptyGeneratorSet: return "EmptyGeneratorSet";
    case ErrorKind::MixedLattices: return "MixedLattices";
    case ErrorKind::NotAFilterResult: return "NotAFilterResult";
    case ErrorKind::ImproperFilter: return "ImproperFilter";
    case ErrorKind::NotAFilter: return "NotAFilter";
    case ErrorKind::NotVeeClosed: return "NotVeeClosed";
    case ErrorKind::DisjointnessViolated: return "DisjointnessViolated";
    case ErrorKind::NonDistributive: return "NonDistributive";
    case ErrorKind::SaturationNotFilter: return "SaturationNotFilter";
    case ErrorKind::NoPrimeMaximum: return "NoPrimeMaximum";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::NotAllSFilters: return "NotAllSFilters";
    case ErrorKind::NotAnSFilter: return "NotAnSFilter";
    case ErrorKind::SNotContained: return "SNotContained";
    case ErrorKind::NotAHom: return "NotAHom";
    case ErrorKind::NotTopPreserving: return "NotTopPreserving";
    case ErrorKind::NotComplemented: return "NotComplemented";
    case ErrorKind::NotOnto: return "NotOnto";
    case ErrorKind::KernelNotContained: return "KernelNotContained";
    case ErrorKind::QuotientOrderIllDefined: return "QuotientOrderIllDefined";
    case ErrorKind::ModulusNotContained: return "ModulusNotContained";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyCatalog: return "EmptyCatalog";
    case ErrorKind::UnknownTheorem: return "UnknownTheorem";
    case ErrorKind::UnknownHypothesis: return "UnknownHypothesis";
  }
  return "Unknown";
}

/// Every failure raised by the library. The kind is stable and testable;
/// the message carries the witness (labels, pair, law) in readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lattika
