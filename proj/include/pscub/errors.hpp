#pragma once

#include <stdexcept>
#include <string>

namespace pscub {

enum class Errc {
  DuplicatePolymer,
  UnknownPolymerInPair,
  DisconnectedSystem,
  UnknownPolymer,
  EmptyVector,
  TooLarge,
  Disconnected,
  DivisionByZero,
  NonPositivePartitionFunction,
  PreconditionViolated,
  MissingLabels,
  NotSpanningTree,
  UnclassifiedEdge,
  WrongKind,
  NoIncompatibleNeighbour,
  NonUnimodal,
  TruncationExceeded,
  UnknownPair,
  OutOfRange,
  ParseError,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Enumeration cap on 2^|E| style loops. PSCUB_ENUM_CAP overrides the default of 24.
int enum_cap();

}  // namespace pscub
