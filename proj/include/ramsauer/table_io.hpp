#pragma once

// Flat-file formats: CSV with a '#'-prefixed header block, and JSON arrays of
// row objects with the same keys as the CSV columns. Numbers are written with
// 17 significant digits so CSV and JSON round-trip the same doubles.

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ramsauer/core.hpp"
#include "ramsauer/kostin_solver.hpp"
#include "ramsauer/scan.hpp"

namespace ramsauer {

using HeaderBlock = std::vector<std::pair<std::string, std::string>>;

inline constexpr std::array<std::string_view, 8> kSweepColumns = {
    "energy", "nu", "t2_analytic", "t2_closed_form", "t2_numeric", "r2_numeric",
    "resonance_order", "error"};

inline constexpr std::array<std::string_view, 6> kProfileColumns = {
    "x", "re_phi", "im_phi", "rho", "s", "invariant"};

inline constexpr const char* kDissipationConvention =
    "Kostin dissipation acts only inside the well (0 < x < L); plane waves outside";

/// "%.17g"; NaN and infinities as "nan", "inf", "-inf".
std::string format_number(double value);

/// Standard entries every output file starts with: command, unit convention,
/// dissipation convention and version. Solver settings are appended when given.
HeaderBlock standard_header(std::string_view command, const PhysicalConstants& constants,
                            const SolverConfig* cfg = nullptr);

void write_header(std::ostream& out, const HeaderBlock& header);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const HeaderBlock& header);
void write_sweep_json(std::ostream& out, const std::vector<SweepRow>& rows);

/// Parse files produced by the writers above. Throws std::runtime_error on
/// malformed input.
std::vector<SweepRow> read_sweep_csv(std::istream& in);
std::vector<SweepRow> read_sweep_json(std::istream& in);

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows,
                       const HeaderBlock& header);

}  // namespace ramsauer
