#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace podsolid {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitNumerical = 3,
};

/// Runs one command line (without the program name). Results go to files,
/// summaries to `out`, the resolved configuration and errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace podsolid
