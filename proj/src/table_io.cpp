#include "ramsauer/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ramsauer/version.hpp"

namespace ramsauer {

namespace {

using Json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("bad number '" + s + "'");
  return v;
}

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number(s);
}

Json json_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> json_opt(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

HeaderBlock standard_header(std::string_view command, const PhysicalConstants& constants,
                            const SolverConfig* cfg) {
  HeaderBlock h;
  h.emplace_back("generator", std::string("ramsauer ") + kVersion);
  h.emplace_back("command", std::string(command));
  h.emplace_back("units", (constants.hbar == 1.0 && constants.mass == 1.0)
                              ? "natural (hbar = m = 1)"
                              : "hbar = " + format_number(constants.hbar) +
                                    ", m = " + format_number(constants.mass));
  h.emplace_back("dissipation", kDissipationConvention);
  if (cfg) {
    h.emplace_back("solver", "rk4 fixed step " + format_number(cfg->step) + ", newton_tol " +
                                 format_number(cfg->newton_tol) + ", max_newton_iters " +
                                 std::to_string(cfg->max_newton_iters));
  }
  return h;
}

void write_header(std::ostream& out, const HeaderBlock& header) {
  for (const auto& [key, value] : header) out << "# " << key << ": " << value << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const HeaderBlock& header) {
  write_header(out, header);
  for (std::size_t i = 0; i < kSweepColumns.size(); ++i) {
    out << (i ? "," : "") << kSweepColumns[i];
  }
  out << '\n';
  for (const auto& r : rows) {
    out << format_number(r.energy) << ',' << format_number(r.nu) << ',' << opt(r.t2_analytic)
        << ',' << opt(r.t2_closed_form) << ',' << opt(r.t2_numeric) << ',' << opt(r.r2_numeric)
        << ',' << (r.resonance_order ? std::to_string(*r.resonance_order) : std::string())
        << ',' << csv_field(r.error) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const std::vector<SweepRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json o;
    o["energy"] = r.energy;
    o["nu"] = r.nu;
    o["t2_analytic"] = json_number(r.t2_analytic);
    o["t2_closed_form"] = json_number(r.t2_closed_form);
    o["t2_numeric"] = json_number(r.t2_numeric);
    o["r2_numeric"] = json_number(r.r2_numeric);
    o["resonance_order"] = r.resonance_order ? Json(*r.resonance_order) : Json(nullptr);
    o["error"] = r.error.empty() ? Json(nullptr) : Json(r.error);
    arr.push_back(std::move(o));
  }
  out << arr.dump(1) << '\n';
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  std::string line;
  bool seen_columns = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv_line(line);
    if (!seen_columns) {
      if (f.size() != kSweepColumns.size()) throw std::runtime_error("unexpected CSV header");
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] != kSweepColumns[i]) throw std::runtime_error("unexpected CSV column " + f[i]);
      }
      seen_columns = true;
      continue;
    }
    if (f.size() != kSweepColumns.size()) throw std::runtime_error("bad CSV row: " + line);
    SweepRow r;
    r.energy = parse_number(f[0]);
    r.nu = parse_number(f[1]);
    r.t2_analytic = parse_opt(f[2]);
    r.t2_closed_form = parse_opt(f[3]);
    r.t2_numeric = parse_opt(f[4]);
    r.r2_numeric = parse_opt(f[5]);
    if (!f[6].empty()) r.resonance_order = std::stoi(f[6]);
    r.error = f[7];
    rows.push_back(std::move(r));
  }
  if (!seen_columns) throw std::runtime_error("CSV has no column header");
  return rows;
}

std::vector<SweepRow> read_sweep_json(std::istream& in) {
  const Json arr = Json::parse(in);
  if (!arr.is_array()) throw std::runtime_error("sweep JSON must be an array");
  std::vector<SweepRow> rows;
  for (const auto& o : arr) {
    SweepRow r;
    r.energy = o.at("energy").get<double>();
    r.nu = o.at("nu").get<double>();
    r.t2_analytic = json_opt(o.at("t2_analytic"));
    r.t2_closed_form = json_opt(o.at("t2_closed_form"));
    r.t2_numeric = json_opt(o.at("t2_numeric"));
    r.r2_numeric = json_opt(o.at("r2_numeric"));
    if (!o.at("resonance_order").is_null()) r.resonance_order = o.at("resonance_order").get<int>();
    if (!o.at("error").is_null()) r.error = o.at("error").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows,
                       const HeaderBlock& header) {
  write_header(out, header);
  for (std::size_t i = 0; i < kProfileColumns.size(); ++i) {
    out << (i ? "," : "") << kProfileColumns[i];
  }
  out << '\n';
  for (const auto& r : rows) {
    out << format_number(r.x) << ',' << format_number(r.re_phi) << ','
        << format_number(r.im_phi) << ',' << format_number(r.rho) << ',' << format_number(r.s)
        << ',' << format_number(r.invariant) << '\n';
  }
}

}  // namespace ramsauer
