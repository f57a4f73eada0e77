#pragma once

// Acceptance battery: one pass/fail line per criterion, shared by the CLI
// `suite` subcommand and the acceptance test binary.

#include <cstdint>
#include <iosfwd>

#include "dirichlet/rng.hpp"

namespace dirichlet {

// Runs every criterion, printing "PASS criterion-name (detail)" or
// "FAIL criterion-name (detail)" per line.  Returns the number of failures.
int run_acceptance_suite(std::ostream& out, uint64_t seed = kDefaultSeed);

} // namespace dirichlet
