#pragma once

#include <stdexcept>
#include <string>

namespace ramlab {

enum class Errc {
  SubspaceNotContained,
  NotASubgroup,
  MixedGroups,
  InertiaDoesNotGenerate,
  ArchTooLarge,
  NonCyclicInertia,
  SizeCapExceeded,
  InvalidType,
  InvalidArgs,
  NoFullInertia,
  ComponentMismatch,
  IncompleteAssignment,
  RequiresSquareCase,
  WildPrimeUnsupported,
  DomainTooLarge,
  NotFundamental,
  BadModulus,
  SearchExhausted,
  CharConflict,
  CharDividesDegree,
  WildPrime,
  NotIndependent,
  UnitUnavailable,
  NotIrreducible,
  UnknownCheckId,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

}  // namespace ramlab
