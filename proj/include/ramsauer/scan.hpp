#pragma once

// Energy sweeps and resonance ("transparency") detection.
//
// `sweep` evaluates rows with OpenMP; `sweep_serial` is the single-threaded
// reference kept for testing and benchmarking. Every row is a pure function
// of (spec, cfg, energy, nu), so both produce bit-identical output.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ramsauer/core.hpp"
#include "ramsauer/kostin_solver.hpp"

namespace ramsauer {

struct SweepMethods {
  bool analytic = true;
  bool closed_form = false;
  bool numeric = false;
};

struct SweepSpec {
  SquareWell well;
  PhysicalConstants constants;
  std::vector<double> energies;  // strictly ascending, > 0
  std::vector<double> nu_values = {0.0};
  SweepMethods methods;
};

void validate(const SweepSpec& spec);

/// `count` energies evenly spaced over [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, int count);

struct SweepRow {
  double energy = 0.0;
  double nu = 0.0;
  std::optional<double> t2_analytic;     // nu = 0 closed form
  std::optional<double> t2_closed_form;  // first order in nu
  std::optional<double> t2_numeric;      // complex-field shooting
  std::optional<double> r2_numeric;
  std::optional<int> resonance_order;  // set on the grid point nearest each analytic root
  std::string error;                   // empty when every requested method succeeded
};

/// One row per (energy, nu), ordered by nu then energy. Failed solves are
/// recorded in `error`; the sweep itself never throws past validation.
std::vector<SweepRow> sweep(const SweepSpec& spec, const SolverConfig& cfg);
std::vector<SweepRow> sweep_serial(const SweepSpec& spec, const SolverConfig& cfg);

enum class ResonanceSource { analytic, numeric };

const char* to_string(ResonanceSource source);

struct ResonanceHit {
  double energy = 0.0;
  int order = 0;
  double t2 = 0.0;
  ResonanceSource source = ResonanceSource::analytic;
  double nu = 0.0;
};

struct ResonanceScan {
  std::vector<ResonanceHit> hits;
  bool degenerate = false;  // numeric |T|^2 flat over the whole grid
};

inline constexpr double kRefineRelTol = 1e-9;

/// Analytic roots qL = j pi inside the energy range, plus local maxima of the
/// numeric |T|^2 for each nu, refined by golden-section search.
ResonanceScan find_resonances(const SweepSpec& spec, const SolverConfig& cfg);

struct GoldenMax {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Maximise f on [lo, hi] by golden-section search until the bracket is
/// below rel_tol * |x|. The best point ever evaluated is returned, and
/// `seed` (a point with known value) competes with it, so the result never
/// falls below the seed.
GoldenMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double rel_tol, std::optional<std::pair<double, double>> seed = {});

}  // namespace ramsauer
