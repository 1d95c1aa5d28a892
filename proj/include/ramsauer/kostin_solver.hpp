#pragma once

// Shooting solvers for the stationary Kostin equation inside the well,
//
//   Phi'' + [q^2 - (2 m nu / hbar) S(x)] Phi = 0,   S = continuous arg Phi,
//
// matched to e^{ikx} + A e^{-ikx} on the left and B e^{ikx} on the right.
// Dissipation acts only for 0 < x < L; outside, the plane waves are exact.
// The phase is anchored at the exit edge, S(L) = kL + arg(B).
//
// Both solvers integrate backwards from x = L with fixed-step RK4, where all
// edge data are known in terms of the unknowns, and run a damped 2-D Newton
// iteration (central finite-difference Jacobian, at most 8 step halvings) on
// the matching residual at x = 0. Initial guesses come from the nu = 0
// closed-form amplitudes.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramsauer/bohm.hpp"
#include "ramsauer/core.hpp"

namespace ramsauer {

enum class Integrator { rk4 };

struct SolverConfig {
  double step = 0.0;  // integration step h; rounded down so that L / h is an integer
  int max_newton_iters = 50;
  double newton_tol = 1e-12;  // on the residual normalised by the incident scale
  Integrator integrator = Integrator::rk4;
};

/// step = L / 1000, newton_tol = 1e-12, 50 iterations.
SolverConfig default_solver_config(const SquareWell& well);

/// Checks 0 < step <= L/100, newton_tol > 0, max_newton_iters >= 1.
void validate(const SolverConfig& cfg, double width);

enum class SolveMethod { complex_field, hydrodynamic };

const char* to_string(SolveMethod method);

struct NumericSolution {
  SolveMethod method = SolveMethod::complex_field;
  HydroFields fields;            // rho, rho', S, C, I(x) on the integration grid
  std::vector<Complex> profile;  // Phi on the same grid
  Complex refl_amp;
  Complex trans_amp;
  double refl_prob = 0.0;       // |A|^2
  double trans_prob = 0.0;      // |B|^2 (complex field) or C/k (hydrodynamic)
  double one_minus_refl = 0.0;  // 1 - |A|^2, kept separate from trans_prob
  int newton_iters = 0;
  double max_residual = 0.0;              // final normalised residual
  std::vector<double> residual_history;  // residual norm at each Newton iterate
};

class SolverError : public std::runtime_error {
 public:
  enum class Kind { non_convergence, node, singular_jacobian, branch };

  SolverError(Kind kind, const std::string& what, double last_residual)
      : std::runtime_error(what), kind_(kind), last_residual_(last_residual) {}

  Kind kind() const noexcept { return kind_; }
  double last_residual() const noexcept { return last_residual_; }

 private:
  Kind kind_;
  double last_residual_;
};

/// Unknown: complex B. Residual Phi'(0) - ik(2 - Phi(0)) / 2k encodes both
/// 1 + A = Phi(0) and ik(1 - A) = Phi'(0); on convergence A = Phi(0) - 1.
NumericSolution solve_complex_field(const ScatteringProblem& problem, const SolverConfig& cfg);

/// Unknowns: C and S(L). Integrates phi'' = [(S')^2 - q^2 + (2 m nu/hbar) S] phi
/// with S' = C / phi^2 from phi(L) = sqrt(C/k), phi'(L) = 0. Residuals:
/// 4k^2 - phi'(0)^2 - phi(0)^2 [k + S'(0)]^2 and
/// sin S(0) phi(0) [k + S'(0)] - phi'(0) cos S(0).
NumericSolution solve_hydrodynamic(const ScatteringProblem& problem, const SolverConfig& cfg);

struct CrossValidationTolerances {
  double trans_prob = 1e-6;
  double profile = 1e-6;  // relative; the phase uses max(|S|, 1) as its scale
};

struct CrossValidation {
  NumericSolution complex_field;
  NumericSolution hydrodynamic;
  double trans_diff = 0.0;
  double rho_rel_diff = 0.0;
  double phase_rel_diff = 0.0;
  bool passed = false;
  std::string message;
};

/// Runs both formulations on the same grid and compares |T|^2 and the
/// Madelung split of the complex profile against the hydrodynamic (rho, S).
/// Solver failures propagate as SolverError.
CrossValidation cross_validate(const ScatteringProblem& problem, const SolverConfig& cfg,
                               const CrossValidationTolerances& tol = {});

/// One row of a profile dump.
struct ProfileRow {
  double x;
  double re_phi;
  double im_phi;
  double rho;
  double s;
  double invariant;
};

std::vector<ProfileRow> profile_rows(const NumericSolution& solution);

}  // namespace ramsauer
