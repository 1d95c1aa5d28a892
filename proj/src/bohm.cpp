#include "ramsauer/bohm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ramsauer/analytic.hpp"

namespace ramsauer {

namespace {

using namespace std::complex_literals;

void check_sizes(std::span<const double> grid, std::size_t n, const char* what) {
  if (grid.size() != n) throw DomainError(what, "size does not match grid");
  if (grid.empty()) throw DomainError("grid", "must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("grid", "must be strictly ascending");
  }
}

// Wrap an angle difference into (-pi, pi].
double wrap(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

}  // namespace

HydroFields madelung_split(std::span<const double> grid, std::span<const Complex> samples,
                           std::optional<double> phase_at_end) {
  check_sizes(grid, samples.size(), "samples");
  const std::size_t n = samples.size();
  HydroFields out;
  out.grid.assign(grid.begin(), grid.end());
  out.rho.resize(n);
  out.phase.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::norm(samples[i]);
    if (!(r > 0.0)) {
      throw DomainError("samples", "zero amplitude at x = " + std::to_string(grid[i]) +
                                       " (node: Madelung split is singular)");
    }
    out.rho[i] = r;
  }
  out.phase[n - 1] = phase_at_end.value_or(std::arg(samples[n - 1]));
  for (std::size_t i = n - 1; i-- > 0;) {
    out.phase[i] = out.phase[i + 1] + std::arg(samples[i] / samples[i + 1]);
  }
  return out;
}

HydroFields madelung_split(std::span<const double> grid, std::span<const Complex> samples,
                           std::span<const Complex> derivatives, double q,
                           std::optional<double> phase_at_end) {
  if (derivatives.size() != samples.size()) {
    throw DomainError("derivatives", "size does not match samples");
  }
  HydroFields out = madelung_split(grid, samples, phase_at_end);
  const std::size_t n = samples.size();
  out.drho.resize(n);
  out.dphase.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.drho[i] = 2.0 * std::real(std::conj(samples[i]) * derivatives[i]);
    out.dphase[i] = std::imag(derivatives[i] / samples[i]);
  }
  out.flux_const = std::imag(std::conj(samples[n - 1]) * derivatives[n - 1]);
  out.invariant.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.invariant[i] = invariant_I(out.rho[i], out.drho[i], out.flux_const, q);
  }
  return out;
}

double invariant_I(double rho, double drho, double flux, double q) {
  if (!(rho > 0.0)) throw DomainError("rho", "must be > 0");
  return drho * drho / (4.0 * rho) + q * q * rho + flux * flux / rho;
}

std::vector<double> conserved_combination(const HydroFields& fields, double coupling) {
  if (fields.invariant.size() != fields.grid.size()) {
    throw DomainError("invariant", "fields carry no invariant samples");
  }
  std::vector<double> out(fields.grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = fields.invariant[i] -
             coupling * (fields.phase[i] * fields.rho[i] - fields.flux_const * fields.grid[i]);
  }
  return out;
}

double conservation_deviation(const HydroFields& fields, double coupling) {
  const auto combo = conserved_combination(fields, coupling);
  const double i0 = combo.front();
  double worst = 0.0;
  for (double c : combo) worst = std::max(worst, std::abs(c - i0));
  return worst / std::abs(i0);
}

std::vector<double> uniform_derivative(std::span<const double> grid,
                                       std::span<const double> values) {
  const std::size_t n = grid.size();
  if (values.size() != n) throw DomainError("values", "size does not match grid");
  if (n < 7) throw DomainError("grid", "needs at least 7 samples");
  const double h = (grid[n - 1] - grid[0]) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(grid[i] - grid[i - 1] - h) > 1e-9 * h) {
      throw DomainError("grid", "must be uniform");
    }
  }
  const auto& f = values;
  std::vector<double> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  d[1] = (f[2] - f[0]) / (2.0 * h);
  d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
  d[2] = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
  d[n - 3] = (f[n - 5] - 8.0 * f[n - 4] + 8.0 * f[n - 2] - f[n - 1]) / (12.0 * h);
  for (std::size_t i = 3; i + 3 < n; ++i) {
    d[i] = (-f[i - 3] + 9.0 * f[i - 2] - 45.0 * f[i - 1] + 45.0 * f[i + 1] - 9.0 * f[i + 2] +
            f[i + 3]) /
           (60.0 * h);
  }
  return d;
}

double flux_residual(const HydroFields& fields) {
  const double c = fields.flux_const;
  if (fields.dphase.size() == fields.grid.size() && !fields.grid.empty()) {
    double worst = 0.0;
    for (std::size_t i = 0; i < fields.grid.size(); ++i) {
      worst = std::max(worst, std::abs(fields.rho[i] * fields.dphase[i] - c));
    }
    return worst / std::abs(c);
  }
  const auto ds = uniform_derivative(fields.grid, fields.phase);
  double worst = 0.0;
  for (std::size_t i = 3; i + 3 < ds.size(); ++i) {
    worst = std::max(worst, std::abs(fields.rho[i] * ds[i] - c));
  }
  return worst / std::abs(c);
}

EdgeValues boundary_values_at_L(double k, double flux) {
  if (!(k > 0.0)) throw DomainError("k", "must be > 0");
  if (!(flux > 0.0)) throw DomainError("flux", "must be > 0");
  return {k, flux / k, 0.0};
}

FieldReflection reflection_from_fields(double rho0, double drho0, double flux, double k) {
  if (!(rho0 > 0.0)) throw DomainError("rho0", "must be > 0");
  const double minus = k * rho0 - flux;
  const double plus = k * rho0 + flux;
  const Complex den = 2.0i * plus + drho0;
  const double den_norm = 4.0 * plus * plus + drho0 * drho0;
  if (!(std::abs(den) > 0.0) || !(den_norm > 0.0)) {
    throw DomainError("fields", "reflection denominator vanishes");
  }
  FieldReflection out;
  out.refl_amp = (2.0i * minus - drho0) / den;
  out.refl_prob = (4.0 * minus * minus + drho0 * drho0) / den_norm;
  return out;
}

double s0_from_fields(double rho0, double drho0, double flux, double k) {
  if (!(rho0 > 0.0)) throw DomainError("rho0", "must be > 0");
  return std::atan(drho0 / (2.0 * (k * rho0 + flux)));
}

VariationalAnsatz variational_ansatz(const HydroFields& fields, double q) {
  const std::size_t n = fields.grid.size();
  if (fields.drho.size() != n || fields.invariant.size() != n) {
    throw DomainError("fields", "need drho and invariant samples");
  }
  VariationalAnsatz out;
  out.beta.resize(n);
  out.theta.resize(n);
  // 2 theta from cos 2theta = (2 q^2 rho - I) / D and sin 2theta = -q rho' / D.
  std::vector<double> two_theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    two_theta[i] = std::atan2(-q * fields.drho[i], 2.0 * q * q * fields.rho[i] - fields.invariant[i]);
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    two_theta[i] = two_theta[i + 1] + wrap(two_theta[i] - two_theta[i + 1]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.theta[i] = 0.5 * two_theta[i];
    out.beta[i] = fields.grid[i] - out.theta[i] / q;
  }
  return out;
}

double ansatz_density(double invariant, double flux, double q, double beta, double x) {
  const double disc = invariant * invariant - 4.0 * q * q * flux * flux;
  const double root = std::sqrt(std::max(disc, 0.0));
  return (invariant + root * std::cos(2.0 * q * (x - beta))) / (2.0 * q * q);
}

ClosedFormReport closed_form_from_phases(const ScatteringProblem& problem, double s_at_L,
                                         double s_at_0) {
  const WaveNumbers wn = wave_numbers(problem);
  if (!(wn.n > 1.0)) throw PerturbationError("closed form needs n = q/k > 1");

  const double hbar = problem.constants.hbar;
  const double m = problem.constants.mass;
  const double nu = problem.nu;
  const double width = problem.well.width;
  const double depth = problem.well.depth;
  const double k = wn.k;
  const double q = wn.q;
  const double n2 = wn.n * wn.n;
  const double kl = k * width;

  const double g = 2.0 * m * nu / (hbar * k * k);
  const double lead = kl - s_at_L;

  ClosedFormReport r;
  r.s_at_0 = s_at_0;
  r.s_at_L = s_at_L;
  r.beta_at_0 = width * (1.0 - (nu * hbar / depth) * (0.5 * kl + s_at_0));

  const double cqb = std::cos(q * r.beta_at_0);
  const double sqb = std::sin(q * r.beta_at_0);
  const double c2qb = std::cos(2.0 * q * r.beta_at_0);

  r.e_aux = (n2 - 1.0) * (1.0 + g * (1.0 + n2) / ((n2 - 1.0) * (n2 - 1.0)) * (lead + s_at_0)) * c2qb +
            (1.0 + n2) * (1.0 + g / (1.0 + n2) * lead);

  const double a = m * nu * s_at_0 / (hbar * q * q);
  r.f_aux = 3.0 + n2 + g * lead +
            (1.0 - n2) / (2.0 * n2) * (1.0 + a * (n2 + 1.0) / (1.0 - n2)) * r.e_aux;
  if (!(r.f_aux > 0.0)) {
    throw PerturbationError("F <= 0: first-order expansion has broken down (nu too large)");
  }
  r.trans_prob = 4.0 / r.f_aux;

  const double flux = k * r.trans_prob;
  r.rho_nu_at_0 = flux / (n2 * k) * ((n2 - 1.0) * cqb * cqb + 1.0);
  r.d_nu = flux * flux * k * k * (1.0 + n2) * (1.0 + n2) +
           4.0 * m * nu * flux * flux * (1.0 + n2) / hbar * lead +
           4.0 * m * nu / hbar * flux * k * (1.0 + n2) * r.rho_nu_at_0 * s_at_0 -
           4.0 * k * k * n2 * flux * flux;

  const double mismatch = (1.0 - n2) / (2.0 * wn.n);
  const double inv_t2 =
      1.0 + sqb * sqb * mismatch * mismatch * (1.0 - a * (n2 + 1.0) / (n2 - 1.0));
  r.trans_prob_reduced = 1.0 / inv_t2;

  r.validity = g * std::max({kl, std::abs(s_at_L), std::abs(s_at_0)});
  r.perturbative = r.validity < kValidityLimit;
  return r;
}

ClosedFormReport closed_form_transmission(const ScatteringProblem& problem) {
  const WaveNumbers wn = wave_numbers(problem);
  const auto amps = scattering_amplitudes(wn, problem.well.width);
  const double s_at_L = wn.k * problem.well.width + std::arg(amps.trans_amp);
  const double s_at_0 = std::arg(1.0 + amps.refl_amp);
  return closed_form_from_phases(problem, s_at_L, s_at_0);
}

}  // namespace ramsauer
