#pragma once
// Reproduction of every published constant as one batch: each row
// re-derives a constant (or runs a validation bundle) and records the
// value, the reference it must meet, elapsed time and pass/fail.  The
// CLI `reproduce` command and the acceptance gate both consume this
// table, so the printed matrix and the shipped checks cannot drift
// apart.  Tolerances are pinned here, in code.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hecke {

struct ReproRow {
    std::string key;        // stable row id, e.g. "gl2-eval-0.1118"
    int criterion = 0;      // acceptance criterion the row belongs to (1..9)
    std::string statement;  // human-readable check description
    double value = 0.0;     // primary measured value (NaN when n/a)
    std::string detail;     // extra values / first failure explanation
    bool pass = false;
    double elapsed_ms = 0.0;
    double budget_ms = 0.0; // runtime budget enforced by the row (0 = none)
};

struct ReproOptions {
    std::string only;            // substring filter on row keys ("" = all)
    int threads = 1;
    std::int64_t empirical_limit = 100000;  // N for the coefficient tables
    // Invoked after each row completes (progress reporting); may be null.
    std::function<void(const ReproRow&)> on_row;
};

// Runs the (filtered) reproduction table in a fixed order.  Rows never
// throw: errors are converted into failed rows with the message in
// `detail`.
std::vector<ReproRow> run_reproduction(const ReproOptions& options);

// All row keys in execution order (for --only discoverability).
std::vector<std::string> reproduction_row_keys();

}  // namespace hecke
