#include "ramsauer/kostin_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ramsauer/analytic.hpp"
#include "ramsauer/rk4.hpp"

namespace ramsauer {

namespace {

using namespace std::complex_literals;
using Vec2 = std::array<double, 2>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxHalvings = 8;

struct Grid {
  int steps = 0;
  double h = 0.0;
  double width = 0.0;

  double x(int i) const { return i == steps ? width : h * i; }
};

Grid make_grid(double width, double step) {
  Grid g;
  g.width = width;
  g.steps = std::max(1, static_cast<int>(std::ceil(width / step * (1.0 - 1e-12))));
  g.h = width / g.steps;
  return g;
}

// Problem data seen by the right-hand sides.
struct Interior {
  double k = 0.0;
  double q = 0.0;
  double coupling = 0.0;  // 2 m nu / hbar
  Grid grid;
};

Interior make_interior(const ScatteringProblem& problem, const SolverConfig& cfg) {
  validate(cfg, problem.well.width);
  const WaveNumbers wn = wave_numbers(problem);
  return {wn.k, wn.q, kostin_coupling(problem), make_grid(problem.well.width, cfg.step)};
}

double norm2(const Vec2& v) { return std::hypot(v[0], v[1]); }

double safe_norm(const Vec2& v) {
  const double r = norm2(v);
  return std::isfinite(r) ? r : kInf;
}

struct NewtonOutcome {
  Vec2 x{};
  int iters = 0;
  double residual = 0.0;
  std::vector<double> history;
};

// Damped Newton on a 2-D real system with a central finite-difference Jacobian.
template <class Residual>
NewtonOutcome newton_2d(const Residual& residual, Vec2 x, const Vec2& scale,
                        const SolverConfig& cfg, const char* label) {
  NewtonOutcome out;
  Vec2 r = residual(x);
  double rn = safe_norm(r);
  out.history.push_back(rn);

  while (rn > cfg.newton_tol) {
    if (out.iters >= cfg.max_newton_iters) {
      std::ostringstream msg;
      msg << label << ": no convergence after " << out.iters
          << " Newton iterations (residual " << rn << ")";
      throw SolverError(SolverError::Kind::non_convergence, msg.str(), rn);
    }

    std::array<Vec2, 2> jac{};  // jac[j] = column j
    for (int j = 0; j < 2; ++j) {
      const double d = 1e-7 * std::max(std::abs(x[j]), scale[j]);
      Vec2 xp = x;
      Vec2 xm = x;
      xp[j] += d;
      xm[j] -= d;
      const Vec2 rp = residual(xp);
      const Vec2 rm = residual(xm);
      jac[j] = {(rp[0] - rm[0]) / (2.0 * d), (rp[1] - rm[1]) / (2.0 * d)};
    }
    const double a = jac[0][0], b = jac[1][0], c = jac[0][1], dd = jac[1][1];
    const double det = a * dd - b * c;
    const double frob2 = a * a + b * b + c * c + dd * dd;
    const double cond = std::abs(det) > 0.0 ? frob2 / std::abs(det) : kInf;
    if (!std::isfinite(cond) || cond > 1e13) {
      std::ostringstream msg;
      msg << label << ": singular Jacobian (condition estimate " << cond << ")";
      throw SolverError(SolverError::Kind::singular_jacobian, msg.str(), rn);
    }
    const Vec2 dx = {(-dd * r[0] + b * r[1]) / det, (c * r[0] - a * r[1]) / det};

    double lambda = 1.0;
    bool accepted = false;
    for (int t = 0; t <= kMaxHalvings; ++t, lambda *= 0.5) {
      const Vec2 trial = {x[0] + lambda * dx[0], x[1] + lambda * dx[1]};
      const Vec2 rt = residual(trial);
      const double rtn = safe_norm(rt);
      if (rtn < rn) {
        x = trial;
        r = rt;
        rn = rtn;
        accepted = true;
        break;
      }
    }
    ++out.iters;
    out.history.push_back(rn);
    if (!accepted) {
      std::ostringstream msg;
      msg << label << ": damped Newton step stalled at residual " << rn;
      throw SolverError(SolverError::Kind::non_convergence, msg.str(), rn);
    }
  }
  out.x = x;
  out.residual = rn;
  return out;
}

// --- complex-field formulation: y = [Re Phi, Im Phi, Re Phi', Im Phi', S] ---

State<5> complex_rhs(const Interior& in, const State<5>& y) {
  const double w = in.q * in.q - in.coupling * y[4];
  const double amp2 = y[0] * y[0] + y[1] * y[1];
  return {y[2], y[3], -w * y[0], -w * y[1], (y[0] * y[3] - y[1] * y[2]) / amp2};
}

State<5> shoot_complex(const Interior& in, Complex b, std::vector<State<5>>* path) {
  const double kl = in.k * in.grid.width;
  const Complex phi_l = b * std::exp(Complex(0.0, kl));
  State<5> y = {phi_l.real(), phi_l.imag(), -in.k * phi_l.imag(), in.k * phi_l.real(),
                kl + std::arg(b)};
  const double floor = 1e-24 * std::norm(phi_l);
  const auto f = [&in](double, const State<5>& s) { return complex_rhs(in, s); };
  if (path) {
    path->assign(in.grid.steps + 1, State<5>{});
    (*path)[in.grid.steps] = y;
  }
  for (int i = in.grid.steps; i > 0; --i) {
    y = rk4_step(f, in.grid.x(i), y, -in.grid.h);
    const double amp2 = y[0] * y[0] + y[1] * y[1];
    if (!(amp2 > floor)) {
      std::ostringstream msg;
      msg << "complex-field shooting: |Phi| vanishes near x = " << in.grid.x(i - 1)
          << " (node; hydrodynamic picture breaks down)";
      throw SolverError(SolverError::Kind::node, msg.str(), kInf);
    }
    if (path) (*path)[i - 1] = y;
  }
  return y;
}

// --- hydrodynamic formulation: y = [phi, phi', S], unknowns (C, S(L)) ---

State<3> hydro_rhs(const Interior& in, double flux, const State<3>& y) {
  const double sp = flux / (y[0] * y[0]);
  return {y[1], (sp * sp - in.q * in.q + in.coupling * y[2]) * y[0], sp};
}

State<3> shoot_hydro(const Interior& in, double flux, double s_at_L,
                     std::vector<State<3>>* path) {
  State<3> y = {std::sqrt(flux / in.k), 0.0, s_at_L};
  const auto f = [&in, flux](double, const State<3>& s) { return hydro_rhs(in, flux, s); };
  if (path) {
    path->assign(in.grid.steps + 1, State<3>{});
    (*path)[in.grid.steps] = y;
  }
  for (int i = in.grid.steps; i > 0; --i) {
    y = rk4_step(f, in.grid.x(i), y, -in.grid.h);
    if (!(y[0] > 0.0) || !std::isfinite(y[0])) {
      std::ostringstream msg;
      msg << "hydrodynamic shooting: phi reaches zero near x = " << in.grid.x(i - 1);
      throw SolverError(SolverError::Kind::node, msg.str(), kInf);
    }
    if (path) (*path)[i - 1] = y;
  }
  return y;
}

struct HydroEdge {
  double phi, dphi, s, s_prime;
};

HydroEdge hydro_edge(double flux, const State<3>& y) {
  return {y[0], y[1], y[2], flux / (y[0] * y[0])};
}

std::vector<double> grid_samples(const Grid& g) {
  std::vector<double> out(g.steps + 1);
  for (int i = 0; i <= g.steps; ++i) out[i] = g.x(i);
  return out;
}

void finish(NumericSolution& sol, const NewtonOutcome& newton) {
  sol.newton_iters = newton.iters;
  sol.max_residual = newton.residual;
  sol.residual_history = newton.history;
  sol.one_minus_refl = 1.0 - sol.refl_prob;
}

}  // namespace

SolverConfig default_solver_config(const SquareWell& well) {
  SolverConfig cfg;
  cfg.step = well.width / 1000.0;
  return cfg;
}

void validate(const SolverConfig& cfg, double width) {
  if (!(cfg.step > 0.0) || cfg.step > width / 100.0 * (1.0 + 1e-12)) {
    throw DomainError("step", "must satisfy 0 < step <= L/100, got " + std::to_string(cfg.step));
  }
  if (!(cfg.newton_tol > 0.0)) throw DomainError("newton_tol", "must be > 0");
  if (cfg.max_newton_iters < 1) throw DomainError("max_newton_iters", "must be >= 1");
}

const char* to_string(SolveMethod method) {
  return method == SolveMethod::complex_field ? "complex_field" : "hydrodynamic";
}

NumericSolution solve_complex_field(const ScatteringProblem& problem, const SolverConfig& cfg) {
  const Interior in = make_interior(problem, cfg);
  const double k = in.k;
  const auto guess =
      scattering_amplitudes(WaveNumbers{in.k, in.q, in.q / in.k}, problem.well.width);

  const auto residual = [&in, k](const Vec2& x) -> Vec2 {
    const State<5> y0 = shoot_complex(in, Complex(x[0], x[1]), nullptr);
    const Complex phi0(y0[0], y0[1]);
    const Complex dphi0(y0[2], y0[3]);
    const Complex g = (dphi0 - 1.0i * k * (2.0 - phi0)) / (2.0 * k);
    return {g.real(), g.imag()};
  };
  const double b_scale = std::max(std::abs(guess.trans_amp), 1e-3);
  const NewtonOutcome newton =
      newton_2d(residual, {guess.trans_amp.real(), guess.trans_amp.imag()}, {b_scale, b_scale},
                cfg, "complex-field solver");

  const Complex b(newton.x[0], newton.x[1]);
  std::vector<State<5>> path;
  shoot_complex(in, b, &path);

  NumericSolution sol;
  sol.method = SolveMethod::complex_field;
  const std::size_t n = path.size();
  sol.profile.resize(n);
  auto& f = sol.fields;
  f.grid = grid_samples(in.grid);
  f.rho.resize(n);
  f.drho.resize(n);
  f.phase.resize(n);
  f.dphase.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex phi(path[i][0], path[i][1]);
    const Complex dphi(path[i][2], path[i][3]);
    sol.profile[i] = phi;
    f.rho[i] = std::norm(phi);
    f.drho[i] = 2.0 * std::real(std::conj(phi) * dphi);
    f.phase[i] = path[i][4];
    f.dphase[i] = std::imag(dphi / phi);
  }
  f.flux_const = k * std::norm(b);
  f.invariant.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.invariant[i] = invariant_I(f.rho[i], f.drho[i], f.flux_const, in.q);
  }

  sol.trans_amp = b;
  sol.refl_amp = sol.profile.front() - 1.0;
  sol.trans_prob = std::norm(b);
  sol.refl_prob = std::norm(sol.refl_amp);
  finish(sol, newton);
  return sol;
}

NumericSolution solve_hydrodynamic(const ScatteringProblem& problem, const SolverConfig& cfg) {
  const Interior in = make_interior(problem, cfg);
  const double k = in.k;
  const double width = problem.well.width;
  const auto guess = scattering_amplitudes(WaveNumbers{in.k, in.q, in.q / in.k}, width);

  const auto residual = [&in, k](const Vec2& x) -> Vec2 {
    if (!(x[0] > 0.0)) return {kInf, kInf};
    const HydroEdge e = hydro_edge(x[0], shoot_hydro(in, x[0], x[1], nullptr));
    const double kk = k + e.s_prime;
    const double r1 = (4.0 * k * k - e.dphi * e.dphi - e.phi * e.phi * kk * kk) / (4.0 * k * k);
    const double r2 = (std::sin(e.s) * e.phi * kk - e.dphi * std::cos(e.s)) / (2.0 * k);
    return {r1, r2};
  };
  const double c0 = k * guess.trans_prob;
  const double s0 = k * width + std::arg(guess.trans_amp);
  const NewtonOutcome newton =
      newton_2d(residual, {c0, s0}, {k, 1.0}, cfg, "hydrodynamic solver");

  const double flux = newton.x[0];
  const double s_at_L = newton.x[1];
  std::vector<State<3>> path;
  shoot_hydro(in, flux, s_at_L, &path);

  // The residuals fix S(0) only modulo pi; the real matching equation must
  // come out as +2k, not -2k.
  const HydroEdge e0 = hydro_edge(flux, path.front());
  const double real_match = std::cos(e0.s) * e0.phi * (k + e0.s_prime) + e0.dphi * std::sin(e0.s);
  if (std::abs(real_match - 2.0 * k) > 1e-6 * 2.0 * k) {
    std::ostringstream msg;
    msg << "hydrodynamic solver: converged on the wrong branch of S(0) (real matching gives "
        << real_match << ", expected " << 2.0 * k << ")";
    throw SolverError(SolverError::Kind::branch, msg.str(), newton.residual);
  }

  NumericSolution sol;
  sol.method = SolveMethod::hydrodynamic;
  const std::size_t n = path.size();
  auto& f = sol.fields;
  f.grid = grid_samples(in.grid);
  f.rho.resize(n);
  f.drho.resize(n);
  f.phase.resize(n);
  f.dphase.resize(n);
  f.invariant.resize(n);
  sol.profile.resize(n);
  f.flux_const = flux;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = path[i][0];
    f.rho[i] = phi * phi;
    f.drho[i] = 2.0 * phi * path[i][1];
    f.phase[i] = path[i][2];
    f.dphase[i] = flux / (phi * phi);
    f.invariant[i] = invariant_I(f.rho[i], f.drho[i], flux, in.q);
    sol.profile[i] = std::polar(phi, path[i][2]);
  }

  const auto refl = reflection_from_fields(f.rho.front(), f.drho.front(), flux, k);
  sol.refl_amp = refl.refl_amp;
  sol.refl_prob = refl.refl_prob;
  sol.trans_amp = std::polar(path.back()[0], s_at_L - k * width);
  sol.trans_prob = flux / k;
  finish(sol, newton);
  return sol;
}

CrossValidation cross_validate(const ScatteringProblem& problem, const SolverConfig& cfg,
                               const CrossValidationTolerances& tol) {
  CrossValidation out;
  out.complex_field = solve_complex_field(problem, cfg);
  out.hydrodynamic = solve_hydrodynamic(problem, cfg);
  const auto& cf = out.complex_field;
  const auto& hy = out.hydrodynamic;

  out.trans_diff = std::abs(cf.trans_prob - hy.trans_prob);
  const HydroFields split =
      madelung_split(cf.fields.grid, cf.profile, cf.fields.phase.back());
  for (std::size_t i = 0; i < split.grid.size(); ++i) {
    const double hr = hy.fields.rho[i];
    const double hs = hy.fields.phase[i];
    out.rho_rel_diff = std::max(out.rho_rel_diff, std::abs(split.rho[i] - hr) / hr);
    out.phase_rel_diff = std::max(out.phase_rel_diff,
                                  std::abs(split.phase[i] - hs) / std::max(std::abs(hs), 1.0));
  }

  std::ostringstream msg;
  out.passed = true;
  if (!(out.trans_diff <= tol.trans_prob)) {
    out.passed = false;
    msg << "|T|^2 differs by " << out.trans_diff << " (complex " << cf.trans_prob
        << ", hydrodynamic " << hy.trans_prob << "); ";
  }
  if (!(out.rho_rel_diff <= tol.profile)) {
    out.passed = false;
    msg << "rho profiles differ by " << out.rho_rel_diff << " relative; ";
  }
  if (!(out.phase_rel_diff <= tol.profile)) {
    out.passed = false;
    msg << "phase profiles differ by " << out.phase_rel_diff << " relative; ";
  }
  out.message = out.passed ? "formulations agree" : msg.str();
  return out;
}

std::vector<ProfileRow> profile_rows(const NumericSolution& solution) {
  const auto& f = solution.fields;
  std::vector<ProfileRow> rows(f.grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] = {f.grid[i],   solution.profile[i].real(), solution.profile[i].imag(),
               f.rho[i],    f.phase[i],
               f.invariant.empty() ? std::numeric_limits<double>::quiet_NaN() : f.invariant[i]};
  }
  return rows;
}

}  // namespace ramsauer
