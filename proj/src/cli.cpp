#include "ramsauer/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramsauer/acceptance.hpp"
#include "ramsauer/analytic.hpp"
#include "ramsauer/bohm.hpp"
#include "ramsauer/kostin_solver.hpp"
#include "ramsauer/scan.hpp"
#include "ramsauer/table_io.hpp"
#include "ramsauer/version.hpp"

namespace ramsauer {

namespace {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemArgs {
  double energy = 0.0;
  double depth = 0.0;
  double width = 0.0;
  double nu = 0.0;
  double hbar = 1.0;
  double mass = 1.0;
};

struct SolverArgs {
  int step_divisions = 1000;
  double newton_tol = 1e-12;
  int max_newton_iters = 50;
};

struct OutputArgs {
  std::string format = "csv";
  std::string path;  // empty: stdout
};

struct SweepArgs {
  double emin = 0.0;
  double emax = 0.0;
  int points = 100;
  std::vector<double> nu = {0.0};
  std::vector<std::string> methods = {"analytic"};
};

void add_well(CLI::App* app, ProblemArgs& p) {
  app->add_option("--depth,-V", p.depth, "Well depth V (> 0)")->required();
  app->add_option("--width,-L", p.width, "Well width L (> 0)")->required();
  app->add_option("--hbar", p.hbar, "Reduced Planck constant")->capture_default_str();
  app->add_option("--mass", p.mass, "Particle mass")->capture_default_str();
}

void add_solver(CLI::App* app, SolverArgs& s) {
  app->add_option("--step-divisions", s.step_divisions, "Integration step = L / N")
      ->capture_default_str();
  app->add_option("--newton-tol", s.newton_tol, "Newton residual tolerance")
      ->capture_default_str();
  app->add_option("--max-newton-iters", s.max_newton_iters, "Newton iteration cap")
      ->capture_default_str();
}

void add_output(CLI::App* app, OutputArgs& o) {
  app->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--output,-o", o.path, "Output file (default: stdout)");
}

ScatteringProblem make_problem(const ProblemArgs& a) {
  return {{a.depth, a.width}, a.energy, a.nu, {a.hbar, a.mass}};
}

SolverConfig make_config(const SolverArgs& s, double width) {
  if (s.step_divisions <= 0) throw DomainError("step_divisions", "must be positive");
  SolverConfig cfg;
  cfg.step = width / s.step_divisions;
  cfg.newton_tol = s.newton_tol;
  cfg.max_newton_iters = s.max_newton_iters;
  validate(cfg, width);
  return cfg;
}

SweepMethods parse_methods(const std::vector<std::string>& names) {
  SweepMethods m{false, false, false};
  for (const auto& n : names) {
    if (n == "analytic") {
      m.analytic = true;
    } else if (n == "closed_form") {
      m.closed_form = true;
    } else if (n == "numeric") {
      m.numeric = true;
    } else {
      throw DomainError("methods", "unknown method '" + n + "'");
    }
  }
  return m;
}

SweepSpec make_sweep(const ProblemArgs& p, const SweepArgs& s) {
  SweepSpec spec;
  spec.well = {p.depth, p.width};
  spec.constants = {p.hbar, p.mass};
  if (s.points < 1) throw DomainError("points", "must be at least 1");
  spec.energies = linspace(s.emin, s.emax, s.points);
  spec.nu_values = s.nu;
  spec.methods = parse_methods(s.methods);
  validate(spec);
  return spec;
}

std::string join_list(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

HeaderBlock sweep_header(const char* command, const ProblemArgs& p, const SweepArgs& s,
                         const SolverConfig& cfg, bool with_methods) {
  HeaderBlock h = standard_header(command, {p.hbar, p.mass}, &cfg);
  std::vector<std::string> nus;
  for (double v : s.nu) nus.push_back(format_number(v));
  h.emplace_back("well", "V = " + format_number(p.depth) + ", L = " + format_number(p.width));
  h.emplace_back("energy_grid", format_number(s.emin) + " .. " + format_number(s.emax) + ", " +
                                    std::to_string(s.points) + " points");
  h.emplace_back("nu", join_list(nus));
  if (with_methods) h.emplace_back("methods", join_list(s.methods));
  return h;
}

// Writes `body` to `path`, or to `out` when the path is empty.
template <typename Body>
void emit(const std::string& path, std::ostream& out, Body&& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  body(file);
  file.flush();
  if (!file) throw IoError("write failed for '" + path + "'");
}

void write_record(std::ostream& out, const OutputArgs& o, const HeaderBlock& header,
                  const Json& record) {
  emit(o.path, out, [&](std::ostream& s) {
    if (o.format == "json") {
      Json doc = Json::object();
      Json meta = Json::object();
      for (const auto& [k, v] : header) meta[k] = v;
      doc["header"] = meta;
      doc["result"] = record;
      s << doc.dump(2) << '\n';
      return;
    }
    write_header(s, header);
    s << "key,value\n";
    for (const auto& [k, v] : record.items()) {
      s << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  });
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(format_number(v)); }

// --- subcommands -----------------------------------------------------------

int cmd_analytic(const ProblemArgs& a, double emax_arg, const OutputArgs& o, std::ostream& out) {
  const ScatteringProblem p = make_problem(a);
  validate(p.constants);
  if (a.energy <= 0.0) throw DomainError("energy", "must be positive");
  if (a.width <= 0.0) throw DomainError("width", "must be positive");
  if (a.depth < 0.0) throw DomainError("depth", "must be non-negative");

  WaveNumbers wn;
  if (a.depth == 0.0) {
    const double k = std::sqrt(2.0 * a.mass * a.energy) / a.hbar;
    wn = {k, k, 1.0};
  } else {
    wn = wave_numbers(p);
  }
  Json rec = Json::object();
  rec["energy"] = a.energy;
  rec["depth"] = a.depth;
  rec["width"] = a.width;
  rec["k"] = wn.k;
  rec["q"] = wn.q;
  rec["n"] = wn.n;
  rec["r2"] = reflection_probability(wn, a.width);
  rec["t2"] = transmission_probability(wn, a.width);

  const double emax = emax_arg > 0.0 ? emax_arg : a.energy;
  std::vector<std::string> orders;
  if (a.depth > 0.0) {
    const int top = orders_covering(p.well, p.constants, emax);
    for (const auto& r : resonance_energies(p.well, p.constants, top)) {
      if (r.energy <= emax * (1.0 + 1e-12)) {
        orders.push_back(std::to_string(r.order) + ":" + format_number(r.energy));
      }
    }
    rec["nearest_order"] = static_cast<int>(std::lround(wn.q * a.width / std::numbers::pi));
  }
  rec["resonances_up_to"] = emax;
  rec["resonances"] = join_list(orders);

  HeaderBlock h = standard_header("analytic", p.constants);
  write_record(out, o, h, rec);
  return kExitOk;
}

int cmd_solve(const ProblemArgs& a, const SolverArgs& s, const OutputArgs& o, std::ostream& out,
              std::ostream& err) {
  const ScatteringProblem p = make_problem(a);
  validate(p);
  const SolverConfig cfg = make_config(s, a.width);
  const WaveNumbers wn = wave_numbers(p);

  Json rec = Json::object();
  rec["energy"] = a.energy;
  rec["depth"] = a.depth;
  rec["width"] = a.width;
  rec["nu"] = a.nu;
  rec["t2_analytic"] = transmission_probability(wn, a.width);
  rec["r2_analytic"] = reflection_probability(wn, a.width);

  try {
    const ClosedFormReport cf = closed_form_transmission(p);
    rec["t2_closed_form"] = number(cf.trans_prob);
    rec["t2_closed_form_reduced"] = number(cf.trans_prob_reduced);
    rec["closed_form_s0"] = cf.s_at_0;
    rec["closed_form_sL"] = cf.s_at_L;
    rec["beta0"] = cf.beta_at_0;
    rec["validity"] = cf.validity;
    if (!cf.perturbative) {
      err << "warning: nu = " << format_number(a.nu) << " is outside the first-order regime"
          << " (validity parameter " << format_number(cf.validity) << " >= " << kValidityLimit
          << "); closed-form values are unreliable\n";
    }
  } catch (const PerturbationError& e) {
    err << "warning: closed form unavailable: " << e.what() << '\n';
    rec["t2_closed_form"] = "nan";
  }

  const CrossValidation cv = cross_validate(p, cfg);
  const NumericSolution& cx = cv.complex_field;
  const NumericSolution& hy = cv.hydrodynamic;
  rec["t2_numeric"] = cx.trans_prob;
  rec["r2_numeric"] = cx.refl_prob;
  rec["t2_hydrodynamic"] = hy.trans_prob;
  rec["r2_hydrodynamic"] = hy.refl_prob;
  rec["s0_numeric"] = hy.fields.phase.front();
  rec["sL_numeric"] = hy.fields.phase.back();
  rec["flux_c"] = hy.fields.flux_const;
  rec["newton_iters_complex"] = cx.newton_iters;
  rec["newton_iters_hydrodynamic"] = hy.newton_iters;
  rec["residual_complex"] = cx.max_residual;
  rec["residual_hydrodynamic"] = hy.max_residual;
  rec["cross_validation_t2_diff"] = cv.trans_diff;
  rec["cross_validation_rho_rel"] = cv.rho_rel_diff;
  rec["cross_validation_s_rel"] = cv.phase_rel_diff;
  rec["cross_validation"] = cv.passed ? "pass" : "fail";

  HeaderBlock h = standard_header("solve", p.constants, &cfg);
  write_record(out, o, h, rec);
  if (!cv.passed) {
    err << "error: formulations disagree: " << cv.message << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_sweep(const ProblemArgs& a, const SweepArgs& sa, const SolverArgs& s,
              const OutputArgs& o, std::ostream& out) {
  const SweepSpec spec = make_sweep(a, sa);
  const SolverConfig cfg = make_config(s, a.width);
  const auto rows = sweep(spec, cfg);
  const HeaderBlock h = sweep_header("sweep", a, sa, cfg, true);
  if (o.format == "json") {
    emit(o.path, out, [&](std::ostream& f) { write_sweep_json(f, rows); });
    // A JSON array has no room for a comment block; the header goes alongside.
    if (!o.path.empty()) emit(o.path + ".header", out, [&](std::ostream& f) { write_header(f, h); });
  } else {
    emit(o.path, out, [&](std::ostream& f) { write_sweep_csv(f, rows, h); });
  }
  return kExitOk;
}

int cmd_resonances(const ProblemArgs& a, const SweepArgs& sa, const SolverArgs& s,
                   const OutputArgs& o, std::ostream& out) {
  const SweepSpec spec = make_sweep(a, sa);
  const SolverConfig cfg = make_config(s, a.width);
  const ResonanceScan scan = find_resonances(spec, cfg);
  HeaderBlock h = sweep_header("resonances", a, sa, cfg, false);
  h.emplace_back("degenerate", scan.degenerate ? "true" : "false");
  emit(o.path, out, [&](std::ostream& f) {
    if (o.format == "json") {
      Json doc = Json::object();
      Json meta = Json::object();
      for (const auto& [k, v] : h) meta[k] = v;
      doc["header"] = meta;
      doc["degenerate"] = scan.degenerate;
      Json hits = Json::array();
      for (const auto& hit : scan.hits) {
        hits.push_back({{"energy", hit.energy},
                        {"order", hit.order},
                        {"t2", hit.t2},
                        {"source", to_string(hit.source)},
                        {"nu", hit.nu}});
      }
      doc["hits"] = hits;
      f << doc.dump(2) << '\n';
      return;
    }
    write_header(f, h);
    f << "energy,order,t2,source,nu\n";
    for (const auto& hit : scan.hits) {
      f << format_number(hit.energy) << ',' << hit.order << ',' << format_number(hit.t2) << ','
        << to_string(hit.source) << ',' << format_number(hit.nu) << '\n';
    }
  });
  return kExitOk;
}

int cmd_validate(const AcceptanceOptions& opt, const std::vector<int>& only, std::ostream& out) {
  const auto results = run_acceptance(opt, only);
  int failed = 0;
  for (const auto& r : results) {
    print_result(out, r);
    if (!r.passed) ++failed;
  }
  out << (results.size() - failed) << '/' << results.size() << " criteria passed\n";
  return failed;
}

}  // namespace

int run_cli(int argc, char** argv) { return run_cli(argc, argv, std::cout, std::cerr); }

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transmission through a square well with optional Kostin dissipation",
               "ramsauer"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  ProblemArgs problem;
  SolverArgs solver;
  OutputArgs output;
  SweepArgs sweep_args;
  double analytic_emax = 0.0;

  auto* analytic = app.add_subcommand("analytic", "Closed-form nu = 0 coefficients");
  analytic->add_option("--energy,-E", problem.energy, "Incident energy E (> 0)")->required();
  add_well(analytic, problem);
  analytic->add_option("--emax", analytic_emax,
                       "List resonances up to this energy (default: E)");
  add_output(analytic, output);

  auto* solve = app.add_subcommand("solve", "Analytic, closed-form and numeric comparison");
  solve->add_option("--energy,-E", problem.energy, "Incident energy E (> 0)")->required();
  add_well(solve, problem);
  solve->add_option("--nu", problem.nu, "Dissipation constant nu (>= 0)")->capture_default_str();
  add_solver(solve, solver);
  add_output(solve, output);

  auto add_grid = [&](CLI::App* sub) {
    add_well(sub, problem);
    sub->add_option("--emin", sweep_args.emin, "Lowest energy")->required();
    sub->add_option("--emax", sweep_args.emax, "Highest energy")->required();
    sub->add_option("--points", sweep_args.points, "Number of energies")->capture_default_str();
    sub->add_option("--nu", sweep_args.nu, "Dissipation constants")
        ->delimiter(',')
        ->capture_default_str();
    add_solver(sub, solver);
    add_output(sub, output);
  };

  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate |T|^2 over an energy grid");
  add_grid(sweep_cmd);
  sweep_cmd->add_option("--methods", sweep_args.methods, "analytic, closed_form, numeric")
      ->delimiter(',')
      ->capture_default_str();

  auto* res_cmd = app.add_subcommand("resonances", "Locate transmission resonances");
  add_grid(res_cmd);

  AcceptanceOptions acc;
  std::vector<int> only;
  auto* validate_cmd = app.add_subcommand("validate", "Run the acceptance suite");
  validate_cmd->add_option("--step-divisions", acc.step_divisions, "Integration step = L / N")
      ->capture_default_str();
  validate_cmd
      ->add_option("--convergence-divisions", acc.convergence_divisions,
                   "Base step for the step-halving check = L / min(N, step divisions)")
      ->capture_default_str();
  validate_cmd->add_option("--newton-tol", acc.newton_tol, "Newton residual tolerance")
      ->capture_default_str();
  validate_cmd->add_option("--max-newton-iters", acc.max_newton_iters, "Newton iteration cap")
      ->capture_default_str();
  validate_cmd->add_option("--random-cases", acc.random_cases, "Random nu = 0 cases")
      ->capture_default_str();
  validate_cmd->add_option("--seed", acc.seed, "Seed for the random cases")
      ->capture_default_str();
  validate_cmd->add_option("--criterion", only, "Run only these criteria (1-9)")
      ->delimiter(',')
      ->check(CLI::Range(1, kCriterionCount));
  validate_cmd->add_option("--profile-dump", acc.profile_dump_dir,
                           "Write profiles and conservation residuals to this directory");
  validate_cmd->add_option("--scratch-dir", acc.scratch_dir, "Directory for sweep outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*analytic) return cmd_analytic(problem, analytic_emax, output, out);
    if (*solve) return cmd_solve(problem, solver, output, out, err);
    if (*sweep_cmd) return cmd_sweep(problem, sweep_args, solver, output, out);
    if (*res_cmd) return cmd_resonances(problem, sweep_args, solver, output, out);
    if (*validate_cmd) return cmd_validate(acc, only, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << " (last residual " << format_number(e.last_residual())
        << ")\n";
    return kExitSolver;
  } catch (const PerturbationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ramsauer
