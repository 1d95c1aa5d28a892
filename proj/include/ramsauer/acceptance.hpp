#pragma once

// Acceptance suite: nine numbered criteria with pinned tolerances. Used by
// `ramsauer validate` and by the acceptance test binary.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ramsauer {

struct AcceptanceOptions {
  int step_divisions = 1000;        // integration step = L / step_divisions
  int convergence_divisions = 100;  // criterion 8 base step = L / min(this, step_divisions)
  double newton_tol = 1e-12;
  int max_newton_iters = 50;
  int random_cases = 50;
  std::uint64_t seed = 20240611;
  std::string profile_dump_dir;  // when set, per-case profiles and conservation residuals
  std::string scratch_dir;       // criterion 9 output files; default: system temp dir
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

/// Run the requested criteria (all when `only` is empty), in ascending order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::vector<int>& only = {});

/// "[PASS] 3 closed-form collapse: ... (0.01 s)"
void print_result(std::ostream& out, const CriterionResult& result);

}  // namespace ramsauer
