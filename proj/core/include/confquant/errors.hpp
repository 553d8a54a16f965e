// Error taxonomy shared by the library and the command line driver.
//
// Each class corresponds to a distinct failure mode with its own process
// exit code, so callers can map exceptions to exit codes mechanically:
//
//   ParseError            -> 2   malformed input (numbers, JSON, CLI args)
//   InadmissiblePairError -> 3   resonant shift with weights outside the
//                                admissible list
//   ResonanceUnresolvedError -> 4  resonant weights but no rule supplied to
//                                fix the leftover free parameter
//   PresentationRequiredError -> 5  low-dimensional curved construction
//                                called without a conformally flat
//                                presentation of the metric
//
// Plain std::invalid_argument / std::domain_error / std::logic_error are
// used for programming errors (dimension mismatches, division by zero,
// broken internal invariants); those are bugs, not user input problems.

#pragma once

#include <stdexcept>
#include <string>

namespace confquant {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class InadmissiblePairError : public std::runtime_error {
 public:
  explicit InadmissiblePairError(const std::string& what)
      : std::runtime_error(what) {}
};

class ResonanceUnresolvedError : public std::runtime_error {
 public:
  explicit ResonanceUnresolvedError(const std::string& what)
      : std::runtime_error(what) {}
};

class PresentationRequiredError : public std::runtime_error {
 public:
  explicit PresentationRequiredError(const std::string& what)
      : std::runtime_error(what) {}
};

// Exit codes used by the CLI for the error classes above.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,        // verification failures
  kExitParse = 2,          // ParseError
  kExitInadmissible = 3,   // InadmissiblePairError
  kExitUnresolved = 4,     // ResonanceUnresolvedError
  kExitPresentation = 5,   // PresentationRequiredError
};

}  // namespace confquant
