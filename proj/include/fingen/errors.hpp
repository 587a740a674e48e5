#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fingen {

// Every failure carries a stable code string; the CLI exposes the code in its
// machine-readable error record, so tests can match on it.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

// Invalid argument values: bad permutations, unsorted measure lists, empty
// partitions, out-of-range configuration.
struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error("DomainError", m) {}
};

// Malformed input text (system files, rationals, command lines).
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("ParseError", m) {}
};

// The action has more than one orbit but the operation requires a single one.
struct NonErgodicError : Error {
  explicit NonErgodicError(const std::string& m) : Error("NonErgodic", m) {}
};

// The supplied partition does not separate points under the action.
struct NotGeneratingError : Error {
  explicit NotGeneratingError(const std::string& m) : Error("NotGenerating", m) {}
};

// A rearrangement property check failed; names the property and witness.
struct ClauseViolation : Error {
  explicit ClauseViolation(const std::string& m) : Error("ClauseViolation", m) {}
};

// Tower construction could not relocate a level completely.
struct TowerLeakError : Error {
  explicit TowerLeakError(const std::string& m) : Error("TowerLeak", m) {}
};

// A label family fed to the decoder does not have the produced-by-relabel shape.
struct MalformedLabelsError : Error {
  explicit MalformedLabelsError(const std::string& m) : Error("MalformedLabels", m) {}
};

// Induced-action data is inconsistent (non-bijective tables, size mismatches).
struct CocycleError : Error {
  explicit CocycleError(const std::string& m) : Error("CocycleInconsistent", m) {}
};

// A requested entropy value cannot be realized with the allowed support.
struct UnreachableEntropyError : Error {
  explicit UnreachableEntropyError(const std::string& m) : Error("Unreachable", m) {}
};

// Safety valve: group enumeration grew past the configured element cap.
struct EnumerationLimitError : Error {
  explicit EnumerationLimitError(const std::string& m) : Error("EnumerationLimit", m) {}
};

// An internal invariant failed; indicates a bug, never expected on valid input.
struct InternalError : Error {
  explicit InternalError(const std::string& m) : Error("Internal", m) {}
};

}  // namespace fingen
