#include <cstdio>
#include <string>
#include <vector>

#include "cli_core.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const heckecli::RunReport report = heckecli::run_command(args);
    if (!report.out.empty()) std::fputs(report.out.c_str(), stdout);
    if (!report.err.empty()) std::fputs(report.err.c_str(), stderr);
    return report.exit_code;
}
