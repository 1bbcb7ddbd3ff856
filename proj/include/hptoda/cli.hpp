#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hptoda {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitRefused = 1, kExitNumeric = 2 };

/// Runs one subcommand (simulate, invariants, spectral, lemmas, theta,
/// reduce). args excludes the program name. Reports go to --out when given,
/// otherwise to `out`; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hptoda
