#pragma once

#include <iosfwd>

#include "qnet/config.hpp"

namespace qnet {

// Executes one subcommand, writing output files under config.out_dir and
// progress to `out`. Returns 0 on success, 2 when a built-in consistency or
// acceptance property fails.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command-line entry point: parses argv, dispatches and maps errors to
// exit codes (1 usage error, 2 property failure).
int run_cli(int argc, const char* const* argv);

}  // namespace qnet
