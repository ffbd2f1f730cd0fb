#pragma once

#include "fraclab/cli/config.hpp"
#include "fraclab/cli/report.hpp"

#include <string>
#include <vector>

namespace fraclab::cli {

enum ExitCode : int {
    exit_ok = 0,          // pass, or value recorded
    exit_error = 1,       // bad config, I/O or numerical failure
    exit_violation = 2,   // an inequality check failed
    exit_unresolved = 3,  // refinement gap above 10%
};

struct Outcome {
    int exit_code;
    Json report;
};

/// Runs one task. Library errors propagate as exceptions.
Outcome run(const RunConfig& config);

/// Report for a failed run: empty results, flags.error = {code, message}.
Json error_report(const std::string& task, const std::string& code, const std::string& message);

/// Full command line: fraclab <task> --config <path> [--out <path>]
/// [--seed N] [--resolution N] [--inequality ...] [--mode ...].
/// Writes the report, prints diagnostics to `err`, returns the exit code.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fraclab::cli
