#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace marginvote {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,      // usage, parse or domain errors
  kExitInvariant = 2,  // internal invariant breach
  kExitWitness = 3,    // axiom check found witnesses
};

/// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace marginvote
