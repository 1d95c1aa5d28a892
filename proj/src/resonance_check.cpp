#include "ramsauer/resonance_check.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ramsauer/bohm.hpp"

namespace ramsauer {

double resonance_shift_scale(const ScatteringProblem& problem) {
  const WaveNumbers wn = wave_numbers(problem);
  const double width = problem.well.width;
  return problem.nu * problem.constants.hbar * (wn.q * width) * (wn.k * width) /
         problem.well.depth;
}

ResonanceLimitReport resonance_limit_check(const ScatteringProblem& problem,
                                           const SolverConfig& cfg,
                                           const LimitTolerances& tol) {
  const WaveNumbers wn = wave_numbers(problem);
  const double pi = std::numbers::pi;
  const double width = problem.well.width;

  ResonanceLimitReport rep;
  rep.q_width = wn.q * width;
  rep.order = std::max(1, static_cast<int>(std::lround(rep.q_width / pi)));
  rep.eta = resonance_shift_scale(problem);

  const ClosedFormReport cf = closed_form_transmission(problem);
  const NumericSolution num = solve_hydrodynamic(problem, cfg);
  rep.closed_form_trans_prob = cf.trans_prob;
  rep.numeric_trans_prob = num.trans_prob;

  const double first = tol.first_order(rep.eta);
  const double second = tol.second_order(rep.eta);
  const auto add = [&rep](std::string name, double residual, double limit) {
    rep.checks.push_back({std::move(name), residual, limit, residual <= limit});
  };

  const double q_beta0 = wn.q * cf.beta_at_0;
  add("q_beta0_minus_j_pi", std::abs(q_beta0 - rep.order * pi), first);
  add("sin_q_beta0", std::abs(std::sin(q_beta0)), first);

  const auto& f = num.fields;
  const double rho0 = f.rho.front();
  const double drho0 = f.drho.front();
  const double flux = f.flux_const;
  const double slack = tol.numeric_floor - tol.floor;
  add("drho0_normalised", std::abs(drho0) / (2.0 * (wn.k * rho0 + flux)), first + slack);
  add("s0_principal", std::abs(s0_from_fields(rho0, drho0, flux, wn.k)), first + slack);
  add("closed_form_t2_minus_1", std::abs(cf.trans_prob - 1.0), second);
  add("numeric_t2_minus_1", std::abs(num.trans_prob - 1.0), second + slack);

  rep.passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const LimitCheck& c) { return c.passed; });
  return rep;
}

}  // namespace ramsauer
