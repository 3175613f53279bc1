#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bitjson {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_parse = 1,
    exit_schema = 2,
    exit_validation = 3,
    exit_io = 4,
    exit_decode = 5,
    exit_fairness = 6,
};

/// Runs the tool with `args` (args[0] is the program name). Data goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bitjson
