#pragma once

#include <stdexcept>
#include <string>

namespace ramsauer {

/// Raised when a physical parameter is outside its admissible domain.
/// `field()` names the offending parameter (e.g. "energy", "depth").
class DomainError : public std::domain_error {
 public:
  DomainError(std::string field, const std::string& what)
      : std::domain_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// hbar and particle mass. Natural units (hbar = m = 1) by default; any
/// consistent unit system works as long as energies, lengths and nu agree.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;
};

/// Attractive square well: potential is -depth on 0 < x < width, zero elsewhere.
/// The depth is stored as a positive number.
struct SquareWell {
  double depth = 0.0;
  double width = 0.0;
};

/// Stationary scattering of a unit-amplitude plane wave incident from x < 0.
/// `nu` is the Kostin dissipation constant (inverse time); nu = 0 is the
/// linear Schroedinger problem. The stationary time factor is exp(-i E t / hbar).
struct ScatteringProblem {
  SquareWell well;
  double energy = 0.0;
  double nu = 0.0;
  PhysicalConstants constants;
};

/// k outside the well, q inside, n = q / k.
struct WaveNumbers {
  double k = 0.0;
  double q = 0.0;
  double n = 0.0;
};

void validate(const PhysicalConstants& constants);
void validate(const SquareWell& well);
void validate(const ScatteringProblem& problem);

/// k = sqrt(2 m E) / hbar, q = sqrt(2 m (E + V)) / hbar.
/// Throws DomainError for E <= 0, V <= 0 or bad constants.
WaveNumbers wave_numbers(const ScatteringProblem& problem);

/// Coupling of the Kostin phase term inside the well, 2 m nu / hbar.
inline double kostin_coupling(const ScatteringProblem& problem) {
  return 2.0 * problem.constants.mass * problem.nu / problem.constants.hbar;
}

}  // namespace ramsauer
