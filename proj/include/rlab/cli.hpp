#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rlab {

// Entry point behind the command-line binary, exposed for direct testing.
// Returns the process exit code: 0 on success, 2 on usage errors, 1 on
// runtime failures.
int cli_main(int argc, char** argv);

// Same dispatch from an argument list (excluding the program name); `out`
// receives everything the command would print to stdout.
int cli_run(const std::vector<std::string>& args, std::string& out);

// Names of the operations each subcommand can perform, keyed by subcommand.
// Kept next to the dispatch so coverage checks cannot drift from the code.
std::vector<std::pair<std::string, std::vector<std::string>>> cli_operations();

}  // namespace rlab
