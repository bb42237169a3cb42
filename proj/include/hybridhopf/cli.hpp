#pragma once

#include <ostream>

#include "hybridhopf/config.hpp"

namespace hybridhopf {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1; // lost branch, failed verification, numerical error
inline constexpr int assumption_violation = 2;
inline constexpr int degenerate = 3;
inline constexpr int config_error = 64;
} // namespace exit_code

/// Environment variable naming the default output directory.
inline constexpr const char* out_dir_env = "HYBRIDHOPF_OUT_DIR";

int run_classify(const RunConfig& config, std::ostream& out);
int run_verify(const RunConfig& config, std::ostream& out);
int run_continue(const RunConfig& config, std::ostream& out);
int run_eco_sweep(const RunConfig& config, std::ostream& out);
int run_truncated(const RunConfig& config, std::ostream& out);

/// Dispatches on config.command; library errors become exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int cli_main(int argc, char** argv);

} // namespace hybridhopf
