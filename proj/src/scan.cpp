#include "ramsauer/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ramsauer/analytic.hpp"
#include "ramsauer/bohm.hpp"

namespace ramsauer {

namespace {

struct RowTask {
  double energy;
  double nu;
  std::optional<int> order;
};

void append_error(std::string& error, const std::string& what) {
  if (!error.empty()) error += "; ";
  for (char c : what) error += (c == '\n' || c == '\r') ? ' ' : c;
}

SweepRow evaluate_row(const SweepSpec& spec, const SolverConfig& cfg, const RowTask& task) {
  SweepRow row;
  row.energy = task.energy;
  row.nu = task.nu;
  row.resonance_order = task.order;
  const ScatteringProblem problem{spec.well, task.energy, task.nu, spec.constants};
  try {
    if (spec.methods.analytic) {
      row.t2_analytic = transmission_probability(wave_numbers(problem), spec.well.width);
    }
  } catch (const std::exception& e) {
    append_error(row.error, std::string("analytic: ") + e.what());
  }
  try {
    if (spec.methods.closed_form) {
      row.t2_closed_form = closed_form_transmission(problem).trans_prob;
    }
  } catch (const std::exception& e) {
    append_error(row.error, std::string("closed_form: ") + e.what());
  }
  try {
    if (spec.methods.numeric) {
      const NumericSolution sol = solve_complex_field(problem, cfg);
      row.t2_numeric = sol.trans_prob;
      row.r2_numeric = sol.refl_prob;
    }
  } catch (const std::exception& e) {
    append_error(row.error, std::string("numeric: ") + e.what());
  }
  return row;
}

std::vector<RowTask> plan_rows(const SweepSpec& spec) {
  validate(spec);
  const auto& grid = spec.energies;
  // Nearest grid point to each analytic root inside the range.
  std::vector<std::optional<int>> orders(grid.size());
  const int max_order = orders_covering(spec.well, spec.constants, grid.back());
  for (const auto& r : resonance_energies(spec.well, spec.constants, max_order)) {
    if (r.energy < grid.front() || r.energy > grid.back()) continue;
    const auto it = std::lower_bound(grid.begin(), grid.end(), r.energy);
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    if (i == grid.size() || (i > 0 && r.energy - grid[i - 1] < grid[i] - r.energy)) --i;
    orders[i] = r.order;
  }

  std::vector<double> nus = spec.nu_values;
  std::stable_sort(nus.begin(), nus.end());
  std::vector<RowTask> tasks;
  tasks.reserve(nus.size() * grid.size());
  for (double nu : nus) {
    for (std::size_t i = 0; i < grid.size(); ++i) tasks.push_back({grid[i], nu, orders[i]});
  }
  return tasks;
}

double numeric_t2(const SweepSpec& spec, const SolverConfig& cfg, double energy, double nu) {
  try {
    return solve_complex_field({spec.well, energy, nu, spec.constants}, cfg).trans_prob;
  } catch (const std::exception&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

void validate(const SweepSpec& spec) {
  validate(spec.well);
  validate(spec.constants);
  if (spec.energies.empty()) throw DomainError("energies", "must not be empty");
  for (std::size_t i = 0; i < spec.energies.size(); ++i) {
    if (!(spec.energies[i] > 0.0) || !std::isfinite(spec.energies[i])) {
      throw DomainError("energies", "must all be finite and > 0");
    }
    if (i > 0 && !(spec.energies[i] > spec.energies[i - 1])) {
      throw DomainError("energies", "must be strictly ascending");
    }
  }
  if (spec.nu_values.empty()) throw DomainError("nu_values", "must not be empty");
  for (double nu : spec.nu_values) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("nu_values", "must be >= 0");
  }
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw DomainError("count", "must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<SweepRow> sweep_serial(const SweepSpec& spec, const SolverConfig& cfg) {
  const auto tasks = plan_rows(spec);
  if (spec.methods.numeric) validate(cfg, spec.well.width);
  std::vector<SweepRow> rows;
  rows.reserve(tasks.size());
  for (const auto& t : tasks) rows.push_back(evaluate_row(spec, cfg, t));
  return rows;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, const SolverConfig& cfg) {
  const auto tasks = plan_rows(spec);
  if (spec.methods.numeric) validate(cfg, spec.well.width);
  std::vector<SweepRow> rows(tasks.size());
  const long n = static_cast<long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    rows[i] = evaluate_row(spec, cfg, tasks[i]);
  }
  return rows;
}

const char* to_string(ResonanceSource source) {
  return source == ResonanceSource::analytic ? "analytic" : "numeric";
}

GoldenMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol, std::optional<std::pair<double, double>> seed) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  GoldenMax best{0.0, -std::numeric_limits<double>::infinity(), 0};
  if (seed) best = {seed->first, seed->second, 0};
  int evals = 0;
  const auto eval = [&](double x) {
    const double v = f(x);
    ++evals;
    if (v > best.value) {
      best.x = x;
      best.value = v;
    }
    return v;
  };

  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > rel_tol * std::max(std::abs(0.5 * (a + b)), std::numeric_limits<double>::min())) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
    if (evals > 400) break;
  }
  best.evaluations = evals;
  return best;
}

ResonanceScan find_resonances(const SweepSpec& spec, const SolverConfig& cfg) {
  validate(spec);
  const auto& grid = spec.energies;
  ResonanceScan scan;

  const int max_order = orders_covering(spec.well, spec.constants, grid.back());
  for (const auto& r : resonance_energies(spec.well, spec.constants, max_order)) {
    if (r.energy < grid.front() || r.energy > grid.back()) continue;
    const ScatteringProblem p{spec.well, r.energy, 0.0, spec.constants};
    scan.hits.push_back({r.energy, r.order,
                         transmission_probability(wave_numbers(p), spec.well.width),
                         ResonanceSource::analytic, 0.0});
  }

  std::vector<double> nus = spec.nu_values;
  std::stable_sort(nus.begin(), nus.end());
  const long n = static_cast<long>(grid.size());
  for (double nu : nus) {
    std::vector<double> t2(grid.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) t2[i] = numeric_t2(spec, cfg, grid[i], nu);

    // Failed solves are -inf and never count as a maximum or its neighbour.
    const auto [lo_it, hi_it] = std::minmax_element(t2.begin(), t2.end());
    if (std::isfinite(*lo_it) && *hi_it - *lo_it < 1e-12) {
      scan.degenerate = true;
      continue;
    }
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      if (!std::isfinite(t2[i - 1]) || !std::isfinite(t2[i + 1])) continue;
      if (!(t2[i] >= t2[i - 1] && t2[i] > t2[i + 1])) continue;
      const auto f = [&](double e) { return numeric_t2(spec, cfg, e, nu); };
      const GoldenMax g =
          golden_section_max(f, grid[i - 1], grid[i + 1], kRefineRelTol, {{grid[i], t2[i]}});
      const ScatteringProblem p{spec.well, g.x, nu, spec.constants};
      const double ql = wave_numbers(p).q * spec.well.width;
      scan.hits.push_back({g.x, static_cast<int>(std::lround(ql / std::numbers::pi)), g.value,
                           ResonanceSource::numeric, nu});
    }
  }
  return scan;
}

}  // namespace ramsauer
