#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace claimlattice {

// Base for all engine errors. `kind()` is a stable machine-readable tag;
// what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("ParseError", m) {}
};

struct OutOfRange : Error {
  explicit OutOfRange(const std::string& m) : Error("OutOfRange", m) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& m) : Error("OverflowError", m) {}
};

struct EmptyInput : Error {
  explicit EmptyInput(const std::string& m) : Error("EmptyInput", m) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& m) : Error("SchemaError", m) {}
};

struct DuplicateId : Error {
  explicit DuplicateId(const std::string& m) : Error("DuplicateId", m) {}
};

struct DanglingDep : Error {
  explicit DanglingDep(const std::string& m) : Error("DanglingDep", m) {}
};

struct NonPositiveWeight : Error {
  explicit NonPositiveWeight(const std::string& m)
      : Error("NonPositiveWeight", m) {}
};

// Carries the offending cycle as a node id sequence, first id repeated last.
struct CycleError : Error {
  CycleError(const std::string& m, std::vector<std::string> cycle_ids)
      : Error("CycleError", m), cycle(std::move(cycle_ids)) {}
  std::vector<std::string> cycle;
};

struct MissingNode : Error {
  explicit MissingNode(const std::string& m) : Error("MissingNode", m) {}
};

struct UnknownNode : Error {
  explicit UnknownNode(const std::string& m) : Error("UnknownNode", m) {}
};

struct IncompleteScores : Error {
  explicit IncompleteScores(const std::string& m)
      : Error("IncompleteScores", m) {}
};

struct IncompleteEff : Error {
  explicit IncompleteEff(const std::string& m) : Error("IncompleteEff", m) {}
};

struct IterationOverflow : Error {
  explicit IterationOverflow(const std::string& m)
      : Error("IterationOverflow", m) {}
};

struct UnknownTerm : Error {
  explicit UnknownTerm(const std::string& m) : Error("UnknownTerm", m) {}
};

struct MissingInterpretation : Error {
  explicit MissingInterpretation(const std::string& m)
      : Error("MissingInterpretation", m) {}
};

struct MissingScope : Error {
  explicit MissingScope(const std::string& m) : Error("MissingScope", m) {}
};

struct MissingProjection : Error {
  explicit MissingProjection(const std::string& m)
      : Error("MissingProjection", m) {}
};

struct MissingFwr : Error {
  explicit MissingFwr(const std::string& m) : Error("MissingFwr", m) {}
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& m) : Error("InvalidInput", m) {}
};

}  // namespace claimlattice
