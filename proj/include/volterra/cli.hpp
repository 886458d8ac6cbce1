#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace volterra::cli {

/// Dispatches the toolkit subcommands (describe, variance, covariance,
/// incvar, constant, scan, fit, simulate, verify). Returns the process
/// exit code: 0 success, 1 validation error, 2 numerical/accuracy error,
/// 3 acceptance failure.
int run_command(const std::vector<std::string>& args,
                std::ostream& out = std::cout,
                std::ostream& err = std::cerr);

}  // namespace volterra::cli
