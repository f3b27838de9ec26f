#pragma once

#include <ostream>

#include "cli/run_config.hpp"

namespace kondo::cli {

/// Runs one configured experiment and emits it. Returns an exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config + run with the exit-code mapping of the binary.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kondo::cli
