#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ramsauer/analytic.hpp"
#include "ramsauer/kostin_solver.hpp"

using namespace ramsauer;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SolverConfig config(double width, int divisions = 1000) {
  SolverConfig cfg;
  cfg.step = width / divisions;
  return cfg;
}

double exact_t2(const ScatteringProblem& p) {
  return transmission_probability(wave_numbers(p), p.well.width);
}

// |T|^2 with the dissipative term frozen at the nu = 0 phase, propagated
// slice by slice with exact piecewise-constant transfer matrices. Its nu
// derivative at nu = 0 is the exact first-order response.
double frozen_phase_t2(const ScatteringProblem& p, int slices) {
  const WaveNumbers wn = wave_numbers(p);
  const double l = p.well.width;
  const auto amps = scattering_amplitudes(wn, l);
  const double g = kostin_coupling(p);
  const double h = l / slices;

  double phase = wn.k * l + std::arg(amps.trans_amp);
  Complex prev = field_at(amps, wn, l, l).value;
  Complex psi = std::exp(Complex(0.0, wn.k * l));
  Complex dpsi = Complex(0.0, wn.k) * psi;
  for (int i = 0; i < slices; ++i) {
    const Complex mid = field_at(amps, wn, l, l - (i + 0.5) * h).value;
    phase += std::arg(mid / prev);
    prev = mid;
    const double kappa = std::sqrt(wn.q * wn.q - g * phase);
    const double c = std::cos(kappa * h);
    const double s = std::sin(kappa * h);
    const Complex next = psi * c - dpsi * s / kappa;
    dpsi = psi * kappa * s + dpsi * c;
    psi = next;
    const Complex end = field_at(amps, wn, l, l - (i + 1.0) * h).value;
    phase += std::arg(end / prev);
    prev = end;
  }
  const Complex b = Complex(0.0, 2.0 * wn.k) / (dpsi + Complex(0.0, wn.k) * psi);
  return std::norm(b);
}

}  // namespace

TEST_CASE("nu = 0 solutions reproduce the analytic transmission") {
  const ScatteringProblem cases[] = {
      {{2.5, 1.0}, 2.0, 0.0, {}},
      {{4.0, 2.0}, 1.0, 0.0, {}},
      {{10.0, 0.7}, 0.3, 0.0, {}},
      {{1.0, 1.0}, 1.5, 0.0, {0.7, 1.3}},
  };
  for (const auto& p : cases) {
    const auto cx = solve_complex_field(p, config(p.well.width));
    const auto hy = solve_hydrodynamic(p, config(p.well.width));
    const double t2 = exact_t2(p);
    CHECK_THAT(cx.trans_prob, WithinAbs(t2, 1e-8));
    CHECK_THAT(hy.trans_prob, WithinAbs(t2, 1e-8));
    CHECK_THAT(cx.refl_prob + cx.trans_prob, WithinAbs(1.0, 1e-8));
    CHECK_THAT(hy.refl_prob + hy.trans_prob, WithinAbs(1.0, 1e-8));
    const auto amps = scattering_amplitudes(wave_numbers(p), p.well.width);
    CHECK(std::abs(cx.trans_amp - amps.trans_amp) < 1e-8);
    CHECK(std::abs(cx.refl_amp - amps.refl_amp) < 1e-8);
    CHECK(std::abs(hy.refl_amp - amps.refl_amp) < 1e-8);
    CHECK(cx.max_residual <= 1e-12);
  }
}

TEST_CASE("vanishing well is free propagation") {
  const ScatteringProblem p{{1e-12, 1.0}, 0.8, 0.0, {}};
  const auto cx = solve_complex_field(p, config(1.0));
  CHECK(std::abs(cx.trans_amp - 1.0) < 1e-9);
  CHECK(std::abs(cx.refl_amp) < 1e-9);
  const double k = std::sqrt(1.6);
  for (std::size_t i = 0; i < cx.profile.size(); i += 100) {
    CHECK(std::abs(cx.profile[i] - std::exp(Complex(0.0, k * cx.fields.grid[i]))) < 1e-9);
  }
}

TEST_CASE("first resonance: rho(0) = 1 and rho'(0) = 0") {
  const double e1 = 0.5 * std::numbers::pi * std::numbers::pi - 2.0;
  const ScatteringProblem p{{2.0, 1.0}, e1, 0.0, {}};
  const auto hy = solve_hydrodynamic(p, config(1.0));
  CHECK_THAT(hy.fields.rho.front(), WithinAbs(1.0, 1e-9));
  CHECK_THAT(hy.fields.drho.front(), WithinAbs(0.0, 1e-8));
  CHECK_THAT(hy.fields.flux_const, WithinRel(std::sqrt(2.0 * e1), 1e-9));
}

TEST_CASE("first-order response matches the frozen-phase oracle") {
  const double nu = 1e-5;
  const ScatteringProblem p0{{2.5, 1.0}, 2.0, 0.0, {}};
  const ScatteringProblem p1{{2.5, 1.0}, 2.0, nu, {}};
  const double oracle = (frozen_phase_t2(p1, 4000) - frozen_phase_t2(p0, 4000)) / nu;
  const double cx = (solve_complex_field(p1, config(1.0)).trans_prob -
                     solve_complex_field(p0, config(1.0)).trans_prob) / nu;
  const double hy = (solve_hydrodynamic(p1, config(1.0)).trans_prob -
                     solve_hydrodynamic(p0, config(1.0)).trans_prob) / nu;
  CHECK_THAT(oracle, WithinRel(-0.02039, 1e-3));
  CHECK_THAT(cx, WithinRel(oracle, 1e-3));
  CHECK_THAT(hy, WithinRel(oracle, 1e-3));
}

TEST_CASE("dissipation inside the well keeps the flux balance") {
  // The nu term is a real potential, so |A|^2 + |B|^2 = 1 still holds.
  const ScatteringProblem p{{2.5, 1.0}, 2.0, 4e-3, {}};
  const auto cx = solve_complex_field(p, config(1.0));
  CHECK_THAT(cx.refl_prob + cx.trans_prob, WithinAbs(1.0, 1e-10));
  CHECK_THAT(cx.one_minus_refl, WithinAbs(cx.trans_prob, 1e-10));
}

TEST_CASE("step halving converges at fourth order") {
  const ScatteringProblem p{{2.5, 1.0}, 2.0, 1e-3, {}};
  double t[3];
  SolverConfig cfg = config(1.0, 100);
  for (double& v : t) {
    v = solve_hydrodynamic(p, cfg).trans_prob;
    cfg.step *= 0.5;
  }
  const double ratio = std::abs(t[0] - t[1]) / std::abs(t[1] - t[2]);
  CHECK(ratio > 14.0);
  CHECK(ratio < 18.0);
}

TEST_CASE("Newton converges in at most five iterations for small dissipation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> energy(0.3, 4.0), ratio(1.1, 3.0), width(0.5, 1.5);
  int checked = 0;
  while (checked < 20) {
    const double e = energy(rng);
    const double n = ratio(rng);
    const double l = width(rng);
    const double k = std::sqrt(2.0 * e);
    const double nu = 0.05 * k * k / (2.0 * k * l);  // (2 nu / k^2) k L = 0.05
    const ScatteringProblem p{{e * (n * n - 1.0), l}, e, nu, {}};
    const auto cx = solve_complex_field(p, config(l));
    const auto hy = solve_hydrodynamic(p, config(l));
    CHECK(cx.newton_iters <= 5);
    CHECK(hy.newton_iters <= 5);
    ++checked;
  }
}

TEST_CASE("Newton converges quadratically") {
  const ScatteringProblem p{{2.5, 1.0}, 2.0, 0.05, {}};
  const auto cx = solve_complex_field(p, config(1.0));
  const auto& r = cx.residual_history;
  REQUIRE(r.size() >= 3);
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (r[i] < 1e-10 || r[i] > 1e-2) continue;
    CHECK(r[i + 1] / (r[i] * r[i]) < 1e3);
  }
}

TEST_CASE("solver errors") {
  const ScatteringProblem p{{2.5, 1.0}, 2.0, 0.05, {}};
  SECTION("step coarser than L/100 is rejected") {
    CHECK_THROWS_AS(solve_complex_field(p, config(1.0, 10)), DomainError);
  }
  SECTION("iteration cap reports the last residual") {
    SolverConfig cfg = config(1.0);
    cfg.max_newton_iters = 1;
    cfg.newton_tol = 1e-15;
    try {
      solve_complex_field(p, cfg);
      FAIL("expected SolverError");
    } catch (const SolverError& e) {
      CHECK(e.kind() == SolverError::Kind::non_convergence);
      CHECK(std::isfinite(e.last_residual()));
      CHECK(e.last_residual() > 0.0);
    }
  }
  SECTION("invalid physics") {
    CHECK_THROWS_AS(solve_hydrodynamic({{2.5, 1.0}, -2.0, 0.0, {}}, config(1.0)), DomainError);
  }
}

TEST_CASE("cross-validation of the two formulations") {
  for (double nu : {0.0, 1e-3}) {
    const ScatteringProblem p{{2.5, 1.0}, 2.0, nu, {}};
    const auto cv = cross_validate(p, config(1.0));
    CHECK(cv.passed);
    CHECK(cv.trans_diff < 1e-8);
    CHECK(cv.rho_rel_diff < 1e-6);
    CHECK(cv.phase_rel_diff < 1e-6);
  }
}

TEST_CASE("profile rows mirror the solution") {
  const ScatteringProblem p{{2.5, 1.0}, 2.0, 1e-3, {}};
  const auto cx = solve_complex_field(p, config(1.0, 200));
  const auto rows = profile_rows(cx);
  REQUIRE(rows.size() == 201);
  CHECK(rows.front().x == 0.0);
  CHECK_THAT(rows.back().x, WithinRel(1.0, 1e-15));
  CHECK_THAT(rows[50].rho, WithinRel(rows[50].re_phi * rows[50].re_phi +
                                         rows[50].im_phi * rows[50].im_phi, 1e-14));
  CHECK(rows.back().s == cx.fields.phase.back());
}
