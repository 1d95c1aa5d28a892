#include "ramsauer/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "ramsauer/analytic.hpp"
#include "ramsauer/bohm.hpp"
#include "ramsauer/cli.hpp"
#include "ramsauer/kostin_solver.hpp"
#include "ramsauer/table_io.hpp"

namespace ramsauer {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kResonanceExact = 1e-12;
constexpr double kResonanceNumeric = 1e-6;
constexpr double kNumericVsAnalytic = 1e-6;
constexpr double kNumericUnitarity = 1e-8;
constexpr double kAnalyticUnitarity = 1e-12;
constexpr double kClosedFormCollapse = 1e-10;
constexpr double kRatioLo = 2.5;
constexpr double kRatioHi = 6.0;
constexpr double kDissipativeResonanceCoeff = 10.0;  // |T|^2 = 1 within 10 nu^2
constexpr double kConservation = 1e-6;
constexpr double kFluxIdentity = 1e-8;
constexpr double kFormulationT2 = 1e-6;
constexpr double kFormulationProfile = 1e-6;
constexpr double kStepRatio = 16.0;
constexpr double kRuntime1 = 1.0;
constexpr double kRuntime2 = 10.0;
constexpr double kRuntime4 = 5.0;

constexpr double kResonanceDepth = 25.0;
constexpr double kResonanceWidth = 1.0;
constexpr double kFirstOrderNus[] = {4e-3, 2e-3, 1e-3};
constexpr double kResonanceNu = 1e-3;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v, int digits = 3) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(digits) << v;
  return s.str();
}

CriterionResult named(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

ScatteringProblem order3_resonance(double nu) {
  const double p = 3.0 * std::numbers::pi / kResonanceWidth;
  return {{kResonanceDepth, kResonanceWidth}, 0.5 * p * p - kResonanceDepth, nu, {}};
}

ScatteringProblem first_order_case(double nu) { return {{2.5, 1.0}, 2.0, nu, {}}; }

struct Suite {
  const AcceptanceOptions& opt;
  std::optional<std::vector<ScatteringProblem>> random;
  // Problems of criteria 2-5, each cross-validated once, for criteria 6 and 7.
  std::optional<std::vector<std::pair<ScatteringProblem, CrossValidation>>> pool;
  std::vector<std::string> pool_errors;

  SolverConfig config(double width) const {
    SolverConfig cfg;
    cfg.step = width / opt.step_divisions;
    cfg.newton_tol = opt.newton_tol;
    cfg.max_newton_iters = opt.max_newton_iters;
    return cfg;
  }

  const std::vector<ScatteringProblem>& random_cases() {
    if (!random) {
      std::mt19937_64 rng(opt.seed);
      std::uniform_real_distribution<double> energy(0.2, 5.0);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::uniform_real_distribution<double> width(0.5, 2.0);
      random.emplace();
      for (int i = 0; i < opt.random_cases; ++i) {
        const double e = energy(rng);
        const double n = 5.0 - 4.0 * unit(rng);  // n in (1, 5]
        const double l = width(rng);
        random->push_back({{e * (n * n - 1.0), l}, e, 0.0, {}});
      }
    }
    return *random;
  }

  const std::vector<std::pair<ScatteringProblem, CrossValidation>>& hydro_pool() {
    if (!pool) {
      std::vector<ScatteringProblem> problems = random_cases();
      for (double nu : kFirstOrderNus) problems.push_back(first_order_case(nu));
      problems.push_back(order3_resonance(0.0));
      problems.push_back(order3_resonance(kResonanceNu));
      pool.emplace();
      CrossValidationTolerances tol{kFormulationT2, kFormulationProfile};
      for (std::size_t i = 0; i < problems.size(); ++i) {
        const auto& p = problems[i];
        try {
          pool->emplace_back(p, cross_validate(p, config(p.well.width), tol));
        } catch (const std::exception& e) {
          pool_errors.push_back("case " + std::to_string(i) + ": " + e.what());
        }
      }
      if (!opt.profile_dump_dir.empty()) dump_profiles();
    }
    return *pool;
  }

  void dump_profiles() const {
    fs::create_directories(opt.profile_dump_dir);
    for (std::size_t i = 0; i < pool->size(); ++i) {
      const auto& [p, cv] = (*pool)[i];
      const auto& hy = cv.hydrodynamic;
      const SolverConfig cfg = config(p.well.width);
      HeaderBlock h = standard_header("validate --profile-dump", p.constants, &cfg);
      h.emplace_back("problem", "E = " + format_number(p.energy) + ", V = " +
                                    format_number(p.well.depth) + ", L = " +
                                    format_number(p.well.width) + ", nu = " + format_number(p.nu));
      h.emplace_back("method", to_string(hy.method));
      const std::string stem = opt.profile_dump_dir + "/case_" + std::to_string(i);
      std::ofstream prof(stem + "_profile.csv");
      write_profile_csv(prof, profile_rows(hy), h);

      const auto combo = conserved_combination(hy.fields, kostin_coupling(p));
      std::ofstream cons(stem + "_conservation.csv");
      write_header(cons, h);
      cons << "x,conserved,relative_deviation\n";
      for (std::size_t j = 0; j < combo.size(); ++j) {
        cons << format_number(hy.fields.grid[j]) << ',' << format_number(combo[j]) << ','
             << format_number(std::abs(combo[j] - combo.front()) / std::abs(combo.front()))
             << '\n';
      }
    }
  }

  // --- criteria -----------------------------------------------------------

  CriterionResult resonance_transparency() {
    CriterionResult r = named(1, "resonance transparency");
    const auto t0 = Clock::now();
    const ScatteringProblem p = order3_resonance(0.0);
    const WaveNumbers wn = wave_numbers(p);
    const double t2 = transmission_probability(wn, p.well.width);
    const double r2 = reflection_probability(wn, p.well.width);
    const NumericSolution num = solve_complex_field(p, config(p.well.width));
    r.seconds = seconds_since(t0);
    const double dt = std::abs(t2 - 1.0);
    const double dn = std::abs(num.trans_prob - 1.0);
    r.passed = dt <= kResonanceExact && r2 <= kResonanceExact && dn <= kResonanceNumeric &&
               r.seconds < kRuntime1;
    r.detail = "E3 = " + format_number(p.energy) + ": |1-T2| analytic " + sci(dt) + ", R2 " +
               sci(r2) + ", |1-T2| numeric " + sci(dn);
    return r;
  }

  CriterionResult nu0_equivalence() {
    CriterionResult r = named(2, "nu = 0 equivalence");
    const auto& cases = random_cases();
    double worst_t = 0.0, worst_un = 0.0, worst_ua = 0.0;
    int failures = 0;
    std::string first_error;
    const auto t0 = Clock::now();
    for (const auto& p : cases) {
      const WaveNumbers wn = wave_numbers(p);
      const double t2 = transmission_probability(wn, p.well.width);
      const double r2 = reflection_probability(wn, p.well.width);
      worst_ua = std::max(worst_ua, std::abs(t2 + r2 - 1.0));
      try {
        const NumericSolution num = solve_complex_field(p, config(p.well.width));
        worst_t = std::max(worst_t, std::abs(num.trans_prob - t2));
        worst_un = std::max(worst_un, std::abs(num.trans_prob + num.refl_prob - 1.0));
      } catch (const std::exception& e) {
        if (failures++ == 0) first_error = e.what();
      }
    }
    r.seconds = seconds_since(t0);
    r.passed = failures == 0 && !cases.empty() && worst_t <= kNumericVsAnalytic &&
               worst_un <= kNumericUnitarity && worst_ua <= kAnalyticUnitarity &&
               r.seconds < kRuntime2;
    r.detail = std::to_string(cases.size()) + " cases: max |T2num-T2an| " + sci(worst_t) +
               ", max |R2+T2-1| numeric " + sci(worst_un) + ", analytic " + sci(worst_ua);
    if (failures) r.detail += "; " + std::to_string(failures) + " solver failures: " + first_error;
    return r;
  }

  CriterionResult closed_form_collapse() {
    CriterionResult r = named(3, "closed-form collapse at nu = 0");
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (const auto& p : random_cases()) {
      const double exact = transmission_probability(wave_numbers(p), p.well.width);
      worst = std::max(worst, std::abs(closed_form_transmission(p).trans_prob - exact));
    }
    r.seconds = seconds_since(t0);
    r.passed = !random_cases().empty() && worst <= kClosedFormCollapse;
    r.detail = "max |4/F - T2(analytic)| " + sci(worst);
    return r;
  }

  CriterionResult first_order_accuracy() {
    CriterionResult r = named(4, "first-order accuracy of the closed form");
    const auto t0 = Clock::now();
    std::vector<double> err;
    std::ostringstream d;
    try {
      for (double nu : kFirstOrderNus) {
        const ScatteringProblem p = first_order_case(nu);
        const double cf = closed_form_transmission(p).trans_prob;
        const double num = solve_complex_field(p, config(p.well.width)).trans_prob;
        err.push_back(std::abs(cf - num));
        d << "nu " << nu << ": err " << sci(err.back()) << "; ";
      }
    } catch (const std::exception& e) {
      r.seconds = seconds_since(t0);
      r.detail = e.what();
      return r;
    }
    r.seconds = seconds_since(t0);
    bool ok = r.seconds < kRuntime4;
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
      const double ratio = err[i] / err[i + 1];
      d << "ratio " << std::fixed << std::setprecision(3) << ratio << std::defaultfloat << "; ";
      ok = ok && ratio >= kRatioLo && ratio <= kRatioHi;
    }
    r.passed = ok;
    r.detail = d.str() + "required ratio in [2.5, 6]";
    return r;
  }

  CriterionResult dissipative_resonance() {
    CriterionResult r = named(5, "dissipation-insensitive resonance");
    const auto t0 = Clock::now();
    const ScatteringProblem p = order3_resonance(kResonanceNu);
    const double tol = kDissipativeResonanceCoeff * kResonanceNu * kResonanceNu;
    try {
      const double cf = closed_form_transmission(p).trans_prob;
      const double cx = solve_complex_field(p, config(p.well.width)).trans_prob;
      const double hy = solve_hydrodynamic(p, config(p.well.width)).trans_prob;
      r.passed = std::abs(cf - 1.0) <= tol && std::abs(cx - 1.0) <= tol &&
                 std::abs(hy - 1.0) <= tol;
      r.detail = "|T2-1| closed form " + sci(std::abs(cf - 1.0)) + ", complex field " +
                 sci(std::abs(cx - 1.0)) + ", hydrodynamic " + sci(std::abs(hy - 1.0)) +
                 " (limit " + sci(tol) + ")";
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    r.seconds = seconds_since(t0);
    return r;
  }

  CriterionResult conservation_law() {
    CriterionResult r = named(6, "conservation law and flux identity");
    const auto t0 = Clock::now();
    const auto& entries = hydro_pool();
    double worst_c = 0.0, worst_f = 0.0, worst_cx = 0.0;
    for (const auto& [p, cv] : entries) {
      worst_c = std::max(worst_c,
                         conservation_deviation(cv.hydrodynamic.fields, kostin_coupling(p)));
      worst_f = std::max(worst_f, flux_residual(cv.hydrodynamic.fields));
      worst_cx = std::max(worst_cx, flux_residual(cv.complex_field.fields));
    }
    r.seconds = seconds_since(t0);
    r.passed = pool_errors.empty() && !entries.empty() && worst_c <= kConservation &&
               worst_f <= kFluxIdentity;
    r.detail = std::to_string(entries.size()) + " hydrodynamic solutions: max I0 deviation " +
               sci(worst_c) + ", max flux residual " + sci(worst_f) +
               " (complex field, not gated: " + sci(worst_cx) + ")";
    if (!pool_errors.empty()) r.detail += "; failures: " + pool_errors.front();
    return r;
  }

  CriterionResult formulation_agreement() {
    CriterionResult r = named(7, "formulation agreement");
    const auto t0 = Clock::now();
    const auto& entries = hydro_pool();
    double worst_t = 0.0, worst_rho = 0.0, worst_s = 0.0;
    bool all = true;
    for (const auto& [p, cv] : entries) {
      worst_t = std::max(worst_t, cv.trans_diff);
      worst_rho = std::max(worst_rho, cv.rho_rel_diff);
      worst_s = std::max(worst_s, cv.phase_rel_diff);
      all = all && cv.passed;
    }
    r.seconds = seconds_since(t0);
    r.passed = pool_errors.empty() && !entries.empty() && all;
    r.detail = "max |dT2| " + sci(worst_t) + ", max rho rel " + sci(worst_rho) +
               ", max S rel " + sci(worst_s);
    if (!pool_errors.empty()) r.detail += "; failures: " + pool_errors.front();
    return r;
  }

  CriterionResult step_convergence() {
    CriterionResult r = named(8, "step convergence");
    const auto t0 = Clock::now();
    std::ostringstream d;
    bool ok = true;
    try {
      for (double nu : kFirstOrderNus) {
        const ScatteringProblem p = first_order_case(nu);
        SolverConfig cfg = config(p.well.width);
        cfg.step = p.well.width / std::min(opt.step_divisions, opt.convergence_divisions);
        double t[3];
        for (int i = 0; i < 3; ++i) {
          t[i] = solve_hydrodynamic(p, cfg).trans_prob;
          cfg.step *= 0.5;
        }
        const double d1 = std::abs(t[0] - t[1]);
        const double d2 = std::abs(t[1] - t[2]);
        const double ratio = d1 / d2;
        ok = ok && d2 * kStepRatio <= d1;
        d << "nu " << nu << ": changes " << sci(d1) << " -> " << sci(d2) << " (ratio "
          << std::fixed << std::setprecision(3) << ratio << std::defaultfloat << "); ";
      }
    } catch (const std::exception& e) {
      ok = false;
      d << e.what() << "; ";
    }
    r.seconds = seconds_since(t0);
    r.passed = ok;
    r.detail = d.str() + "required ratio >= 16";
    return r;
  }

  CriterionResult determinism() {
    CriterionResult r = named(9, "sweep determinism");
    const auto t0 = Clock::now();
    const fs::path dir = opt.scratch_dir.empty() ? fs::temp_directory_path() / "ramsauer_validate"
                                                 : fs::path(opt.scratch_dir);
    fs::create_directories(dir);
    std::vector<std::string> contents;
    int status = 0;
    for (int run = 0; run < 2; ++run) {
      const std::string out = (dir / ("sweep_" + std::to_string(run) + ".csv")).string();
      const std::vector<std::string> args = {
          "ramsauer", "sweep",    "--depth",  "25",      "--width",  "1",
          "--emin",   "0.5",      "--emax",   "40",      "--points", "80",
          "--nu",     "0,0.001",  "--methods", "analytic,closed_form,numeric",
          "--step-divisions", std::to_string(opt.step_divisions), "--output", out};
      std::vector<char*> argv;
      std::vector<std::string> storage = args;
      for (auto& s : storage) argv.push_back(s.data());
      std::ostringstream sink_out, sink_err;
      status = std::max(status, run_cli(static_cast<int>(argv.size()), argv.data(), sink_out,
                                        sink_err));
      std::ifstream in(out, std::ios::binary);
      contents.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    r.seconds = seconds_since(t0);
    r.passed = status == 0 && !contents[0].empty() && contents[0] == contents[1];
    r.detail = "two sweep runs (" + std::to_string(contents[0].size()) + " bytes) " +
               (contents[0] == contents[1] ? "byte-identical" : "differ") +
               ", exit status " + std::to_string(status);
    return r;
  }
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::vector<int>& only) {
  Suite suite{options, {}, {}, {}};
  const std::map<int, std::function<CriterionResult()>> criteria = {
      {1, [&] { return suite.resonance_transparency(); }},
      {2, [&] { return suite.nu0_equivalence(); }},
      {3, [&] { return suite.closed_form_collapse(); }},
      {4, [&] { return suite.first_order_accuracy(); }},
      {5, [&] { return suite.dissipative_resonance(); }},
      {6, [&] { return suite.conservation_law(); }},
      {7, [&] { return suite.formulation_agreement(); }},
      {8, [&] { return suite.step_convergence(); }},
      {9, [&] { return suite.determinism(); }},
  };
  std::vector<CriterionResult> results;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    try {
      results.push_back(run());
    } catch (const std::exception& e) {
      results.push_back({id, "criterion " + std::to_string(id), false, e.what(), 0.0});
    }
  }
  return results;
}

void print_result(std::ostream& out, const CriterionResult& result) {
  out << (result.passed ? "[PASS] " : "[FAIL] ") << result.id << ' ' << result.name << ": "
      << result.detail << " (" << std::fixed << std::setprecision(3) << result.seconds << " s)"
      << std::defaultfloat << '\n';
}

}  // namespace ramsauer
