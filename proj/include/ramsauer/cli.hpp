#pragma once

// Command-line driver: analytic, solve, sweep, resonances, validate.
//
// Exit codes: 0 success, 1 usage or validation failure, 2 solver
// non-convergence, 3 I/O. `validate` returns the number of failed criteria.

#include <iosfwd>

namespace ramsauer {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitIo = 3;

int run_cli(int argc, char** argv);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ramsauer
