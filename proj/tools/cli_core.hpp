#pragma once
// Command handling for the hecke CLI, separated from main() so tests can
// drive commands in-process and inspect the exact RunReport they print.

#include <string>
#include <vector>

#include "json.hpp"

namespace heckecli {

struct RunReport {
    int exit_code = 0;
    std::string out;  // what main() prints to stdout
    std::string err;  // what main() prints to stderr
    nlohmann::ordered_json report;  // the full RunReport document (may be null
                                    // for usage errors)
};

// Parses and executes one command line (argv without the program name).
// Never throws; failures are encoded in exit_code / err.
RunReport run_command(const std::vector<std::string>& args);

}  // namespace heckecli
