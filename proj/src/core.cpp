#include "ramsauer/core.hpp"

#include <cmath>

namespace ramsauer {

namespace {

void require_positive(double value, const char* field) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw DomainError(field, "must be finite and > 0, got " + std::to_string(value));
  }
}

}  // namespace

void validate(const PhysicalConstants& constants) {
  require_positive(constants.hbar, "hbar");
  require_positive(constants.mass, "mass");
}

void validate(const SquareWell& well) {
  require_positive(well.depth, "depth");
  require_positive(well.width, "width");
}

void validate(const ScatteringProblem& problem) {
  validate(problem.constants);
  validate(problem.well);
  require_positive(problem.energy, "energy");
  if (!std::isfinite(problem.nu) || problem.nu < 0.0) {
    throw DomainError("nu", "must be finite and >= 0, got " + std::to_string(problem.nu));
  }
}

WaveNumbers wave_numbers(const ScatteringProblem& problem) {
  validate(problem);
  const double two_m = 2.0 * problem.constants.mass;
  const double hbar = problem.constants.hbar;
  const double k = std::sqrt(two_m * problem.energy) / hbar;
  const double q = std::sqrt(two_m * (problem.energy + problem.well.depth)) / hbar;
  return {k, q, q / k};
}

}  // namespace ramsauer
