#pragma once

// de Broglie-Bohm (Madelung) description of the stationary Kostin problem
// inside the well: Phi = phi e^{iS}, rho = phi^2, flux constant C = rho S',
// invariant I = rho'^2/(4 rho) + q^2 rho + C^2/rho, and the conserved
// combination I(x) - (2 m nu / hbar)(S rho - C x) = I0.

#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsauer/core.hpp"

namespace ramsauer {

using Complex = std::complex<double>;

/// Sampled hydrodynamic fields on an ascending grid over [0, L].
/// `drho`, `dphase`, `flux_const` and `invariant` are only filled when the
/// derivative of the field is known (solver output); a bare Madelung split
/// leaves them empty / NaN.
struct HydroFields {
  std::vector<double> grid;
  std::vector<double> rho;
  std::vector<double> drho;
  std::vector<double> phase;
  std::vector<double> dphase;  // S'
  double flux_const = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> invariant;
};

/// Split complex samples into rho = |Phi|^2 and a continuous phase.
/// The phase is unwrapped from the right end; `phase_at_end` pins S at the
/// last sample (default: principal argument there). Throws DomainError if a
/// sample is zero.
HydroFields madelung_split(std::span<const double> grid, std::span<const Complex> samples,
                           std::optional<double> phase_at_end = std::nullopt);

/// As above, and also fills drho = 2 Re(conj(Phi) Phi'), S' = Im(Phi'/Phi), the flux constant
/// (Im(conj(Phi) Phi') at the right edge) and I(x) for wave number q.
HydroFields madelung_split(std::span<const double> grid, std::span<const Complex> samples,
                           std::span<const Complex> derivatives, double q,
                           std::optional<double> phase_at_end = std::nullopt);

/// I = rho'^2 / (4 rho) + q^2 rho + C^2 / rho. Throws DomainError for rho <= 0.
double invariant_I(double rho, double drho, double flux, double q);

/// I(x) - coupling * (S(x) rho(x) - C x) at every sample; coupling = 2 m nu / hbar.
std::vector<double> conserved_combination(const HydroFields& fields, double coupling);

/// max_x |combination(x) - I0| / |I0|, with I0 taken at x = 0.
double conservation_deviation(const HydroFields& fields, double coupling);

/// max over samples of |rho S' - C| / |C|. Uses `dphase` when present;
/// otherwise S' comes from a sixth-order central difference of the phase
/// (interior samples only, uniform grid with at least 7 samples).
double flux_residual(const HydroFields& fields);

/// Finite-difference derivative on a uniform grid: sixth-order central in the
/// interior, dropping to fourth and second order over the last three samples
/// at each end.
std::vector<double> uniform_derivative(std::span<const double> grid,
                                       std::span<const double> values);

struct EdgeValues {
  double s_prime = 0.0;
  double rho = 0.0;
  double drho = 0.0;
};

/// Right-edge data from continuity with the transmitted plane wave:
/// S'(L) = k, rho(L) = C / k, rho'(L) = 0.
EdgeValues boundary_values_at_L(double k, double flux);

struct FieldReflection {
  Complex refl_amp;
  double refl_prob = 0.0;
};

/// A = (2i[k rho0 - C] - rho0') / (2i[k rho0 + C] + rho0') and |A|^2 from its
/// own closed form.
FieldReflection reflection_from_fields(double rho0, double drho0, double flux, double k);

/// S(0) = atan(rho0' / (2 [k rho0 + C])), principal branch.
double s0_from_fields(double rho0, double drho0, double flux, double k);

/// Modulation function beta(x) and theta(x) = q (x - beta(x)) of the
/// representation rho = (I + sqrt(I^2 - 4 q^2 C^2) cos 2 theta) / 2q^2.
struct VariationalAnsatz {
  std::vector<double> beta;
  std::vector<double> theta;
};

/// Recover beta and theta from solver fields (needs drho, flux_const, invariant).
/// theta is unwrapped continuously from theta(L) = 0, so beta(L) = L.
VariationalAnsatz variational_ansatz(const HydroFields& fields, double q);

/// rho from (I, C, q, beta) at position x.
double ansatz_density(double invariant, double flux, double q, double beta, double x);

/// Raised when the first-order closed form is used outside its domain
/// (n <= 1, or F <= 0 meaning the expansion has broken down).
class PerturbationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// First-order-in-nu closed form for |T|^2 and its intermediates.
struct ClosedFormReport {
  double s_at_0 = 0.0;
  double s_at_L = 0.0;
  double beta_at_0 = 0.0;
  double e_aux = 0.0;
  double f_aux = 0.0;
  double trans_prob = 0.0;          // 4 / f_aux
  double trans_prob_reduced = 0.0;  // sin^2(q beta0) form
  double d_nu = 0.0;
  double rho_nu_at_0 = 0.0;
  double validity = 0.0;  // (2 m nu / hbar k^2) max(kL, |S(L)|, |S(0)|)
  bool perturbative = true;  // validity < 0.1
};

inline constexpr double kValidityLimit = 0.1;

/// Closed form with S(L) = kL + arg(B0) and S(0) = arg(1 + A0) taken from
/// the nu = 0 amplitudes.
ClosedFormReport closed_form_transmission(const ScatteringProblem& problem);

/// Closed form evaluated for caller-supplied phases S(L), S(0).
ClosedFormReport closed_form_from_phases(const ScatteringProblem& problem, double s_at_L,
                                         double s_at_0);

}  // namespace ramsauer
