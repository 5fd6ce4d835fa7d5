// Command-line front end. Subcommands: norm, approx, grid, check-conditions,
// rates. Exit codes: 0 on success/PASS verdicts, 1 on computation errors or
// FAIL verdicts, 2 on config rejection.
#pragma once

#include <string>

#include "sgw/serialize.hpp"

namespace sgw {

int run_cli(int argc, const char* const* argv);

// Runs a parsed experiment config and returns the report JSON (the driver
// behind `rates --config`).
Json run_experiment_config(const ExperimentConfig& config);

}  // namespace sgw
