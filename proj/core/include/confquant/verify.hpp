// Named verification suites over the whole library: each one sweeps an
// algebraic identity (equivariance, commutators, the vanishing ideal, the
// coefficient system, adjoints, conformal invariance, curvature transform
// laws, or the two-chart agreement) over deterministic enumerations and
// seeded random data, and reports every case that fails to hold exactly.
//
// The suites are the machine-checkable form of the engine's contracts; a
// clean report is an exact statement, not a numerical one.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "confquant/rng.hpp"

namespace confquant {

struct VerifyFailure {
  std::string case_id;   // stable description of the failing case
  std::string residual;  // short summary of the nonzero residual
};

struct VerifyReport {
  std::string suite;
  long cases_run = 0;
  std::vector<VerifyFailure> failures;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
  // Informational remarks (for example the witness found by the ideal
  // suite in dimension three); never affect the pass/fail status.
  std::vector<std::string> notes;

  bool ok() const { return failures.empty(); }
};

struct VerifyOptions {
  // Restrict to one dimension (each suite has its own default sweep).
  std::optional<int> n;
  std::uint64_t seed = kDefaultSeed;
  // Cap on the x-degree of enumerated monomial symbols.
  int max_degree = 3;
  // Randomized case count; 0 selects the suite default.
  int cases = 0;
};

// The suite names accepted by run_verify_suite, in canonical order:
// equivariance, commutators, ideal, system, adjoint, conformal-invariance,
// curvature-transforms, agreement.
std::vector<std::string> verify_suite_names();

// Runs one named suite.  Unknown names throw ParseError; everything found
// by the sweep itself is reported in the returned report, never thrown.
VerifyReport run_verify_suite(const std::string& suite,
                              const VerifyOptions& options = {});

// Runs every suite in canonical order.
std::vector<VerifyReport> run_all_verify_suites(
    const VerifyOptions& options = {});

}  // namespace confquant
