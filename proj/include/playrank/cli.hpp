#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace playrank::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitParse = 2;  // also unreadable input files
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUsage = 64;

/// Maximum allowed L-inf gap between the power and direct solutions for --solver both.
inline constexpr double kSolverAgreementTolerance = 1e-9;

/// Runs the command line (arguments exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace playrank::cli
