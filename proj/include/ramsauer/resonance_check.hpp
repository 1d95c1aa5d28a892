#pragma once

#include <string>
#include <vector>

#include "ramsauer/core.hpp"
#include "ramsauer/kostin_solver.hpp"

namespace ramsauer {

struct LimitCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ResonanceLimitReport {
  int order = 0;  // nearest j with qL ~ j pi
  double q_width = 0.0;
  double eta = 0.0;
  double closed_form_trans_prob = 0.0;
  double numeric_trans_prob = 0.0;
  std::vector<LimitCheck> checks;
  bool passed = false;
};

/// Tolerances for the resonance chain, in units of the dimensionless shift
/// eta = nu hbar (qL)(kL) / V. Quantities that vanish at first order in nu
/// (q beta(0) - j pi, sin q beta(0), rho'(0), S(0)) use `first_order`;
/// |T|^2 - 1, which is quadratic in them, uses `second_order`. Both add a
/// floor for the nu = 0 case; solver-derived quantities carry discretization
/// error and use the larger `numeric_floor`.
struct LimitTolerances {
  double floor = 1e-10;
  double numeric_floor = 1e-7;
  double first_order_coeff = 1.0;
  double second_order_coeff = 1.0;

  double first_order(double eta) const { return floor + first_order_coeff * eta; }
  double second_order(double eta) const { return floor + second_order_coeff * eta * eta; }
};

/// eta = nu hbar (qL)(kL) / V.
double resonance_shift_scale(const ScatteringProblem& problem);

/// Walks the resonance chain q beta(0) ~ j pi -> sin q beta(0) = 0 and
/// rho'(0) = 0 -> S(0) = 0 -> |T|^2 = 1 for a problem tuned to qL = j pi.
/// beta(0) and the closed-form |T|^2 come from the first-order formulas; rho'(0),
/// S(0) and the numeric |T|^2 from the hydrodynamic solver. Residuals are
/// reported even when large; nothing is thrown for a failed check.
ResonanceLimitReport resonance_limit_check(const ScatteringProblem& problem,
                                           const SolverConfig& cfg,
                                           const LimitTolerances& tol = {});

}  // namespace ramsauer
