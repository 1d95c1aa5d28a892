#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstring>
#include <cmath>
#include <numbers>

#include "ramsauer/analytic.hpp"
#include "ramsauer/scan.hpp"

using namespace ramsauer;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SweepSpec well25(double emin, double emax, int points) {
  SweepSpec spec;
  spec.well = {25.0, 1.0};
  spec.energies = linspace(emin, emax, points);
  return spec;
}

bool same(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::memcmp(&*a, &*b, sizeof(double)) == 0;
}

const double kE3 = 4.5 * std::numbers::pi * std::numbers::pi - 25.0;

}  // namespace

TEST_CASE("linspace endpoints") {
  const auto e = linspace(0.5, 40.0, 400);
  REQUIRE(e.size() == 400);
  CHECK(e.front() == 0.5);
  CHECK(e.back() == 40.0);
  CHECK(linspace(2.0, 2.0, 1) == std::vector<double>{2.0});
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec = well25(0.5, 40.0, 10);
  CHECK_NOTHROW(validate(spec));
  spec.energies = {1.0, 0.5};
  CHECK_THROWS_AS(validate(spec), DomainError);
  spec.energies = {0.0, 1.0};
  CHECK_THROWS_AS(validate(spec), DomainError);
  spec = well25(0.5, 40.0, 10);
  spec.nu_values = {};
  CHECK_THROWS_AS(validate(spec), DomainError);
  spec.nu_values = {-1.0};
  CHECK_THROWS_AS(validate(spec), DomainError);
}

TEST_CASE("analytic-only sweep") {
  const auto spec = well25(0.5, 40.0, 5);
  const auto rows = sweep(spec, default_solver_config(spec.well));
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) {
    CHECK(r.t2_analytic.has_value());
    CHECK_FALSE(r.t2_closed_form.has_value());
    CHECK_FALSE(r.t2_numeric.has_value());
    CHECK_FALSE(r.r2_numeric.has_value());
    CHECK(r.error.empty());
  }
}

TEST_CASE("sweep over the V = 25 well peaks at the order-3 resonance") {
  const auto spec = well25(0.5, 40.0, 400);
  const auto rows = sweep(spec, default_solver_config(spec.well));
  const auto best = std::max_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return *a.t2_analytic < *b.t2_analytic;
  });
  CHECK_THAT(best->energy, WithinAbs(kE3, 0.1));
  CHECK(*best->t2_analytic > 0.9999);
  CHECK(std::count_if(rows.begin(), rows.end(),
                      [](const auto& r) { return r.resonance_order.has_value(); }) == 1);
}

TEST_CASE("grid point on a resonance carries t2 = 1 and its order") {
  SweepSpec spec = well25(1.0, 30.0, 3);
  spec.energies[1] = kE3;
  const auto rows = sweep(spec, default_solver_config(spec.well));
  REQUIRE(rows[1].resonance_order);
  CHECK(*rows[1].resonance_order == 3);
  CHECK_THAT(*rows[1].t2_analytic, WithinAbs(1.0, 1e-12));
}

TEST_CASE("rows are ordered by nu then energy") {
  SweepSpec spec = well25(0.5, 10.0, 4);
  spec.nu_values = {2e-3, 0.0, 1e-3};
  const auto rows = sweep(spec, default_solver_config(spec.well));
  REQUIRE(rows.size() == 12);
  CHECK(std::is_sorted(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.nu < b.nu || (a.nu == b.nu && a.energy < b.energy);
  }));
}

TEST_CASE("parallel sweep is bit-identical to the serial reference") {
  SweepSpec spec = well25(0.5, 40.0, 60);
  spec.nu_values = {0.0, 1e-3, 0.3};
  spec.methods = {true, true, true};
  const auto cfg = default_solver_config(spec.well);
  const auto par = sweep(spec, cfg);
  const auto ser = sweep_serial(spec, cfg);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].energy == ser[i].energy);
    CHECK(par[i].nu == ser[i].nu);
    CHECK(same(par[i].t2_analytic, ser[i].t2_analytic));
    CHECK(same(par[i].t2_closed_form, ser[i].t2_closed_form));
    CHECK(same(par[i].t2_numeric, ser[i].t2_numeric));
    CHECK(same(par[i].r2_numeric, ser[i].r2_numeric));
    CHECK(par[i].resonance_order == ser[i].resonance_order);
    CHECK(par[i].error == ser[i].error);
  }
}

TEST_CASE("failed solves are recorded, not fatal") {
  SweepSpec spec = well25(0.5, 2.0, 3);
  spec.nu_values = {0.05};
  spec.methods = {true, false, true};
  SolverConfig cfg = default_solver_config(spec.well);
  cfg.max_newton_iters = 1;
  cfg.newton_tol = 1e-15;
  const auto rows = sweep(spec, cfg);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.t2_analytic.has_value());
    CHECK_FALSE(r.t2_numeric.has_value());
    CHECK_FALSE(r.error.empty());
  }
}

TEST_CASE("numeric peak exceeds rows away from resonances") {
  SweepSpec spec = well25(0.5, 40.0, 120);
  spec.methods = {true, false, true};
  const auto rows = sweep(spec, default_solver_config(spec.well));
  const double spacing = rows[1].energy - rows[0].energy;
  const auto res = resonance_energies(spec.well, {}, 4);
  for (const auto& peak : rows) {
    if (!peak.resonance_order) continue;
    for (const auto& r : rows) {
      const bool far = std::all_of(res.begin(), res.end(), [&](const Resonance& x) {
        return std::abs(r.energy - x.energy) > spacing;
      });
      if (far) CHECK(*peak.t2_numeric > *r.t2_numeric);
    }
  }
}

TEST_CASE("golden-section refinement") {
  const auto f = [](double x) { return -(x - 1.3) * (x - 1.3); };
  SECTION("finds the maximum") {
    const auto g = golden_section_max(f, 0.0, 2.0, 1e-9);
    CHECK_THAT(g.x, WithinAbs(1.3, 1e-6));
  }
  SECTION("never drops below the seed") {
    const auto g = golden_section_max(f, 0.0, 1.0, 1e-9, {{1.0, f(1.0)}});
    CHECK(g.value >= f(1.0));
  }
}

TEST_CASE("resonance search on the V = 25 well") {
  SweepSpec spec = well25(0.5, 40.0, 400);
  spec.nu_values = {0.0};
  const auto scan = find_resonances(spec, default_solver_config(spec.well));
  CHECK_FALSE(scan.degenerate);
  std::vector<ResonanceHit> analytic, numeric;
  for (const auto& h : scan.hits) {
    (h.source == ResonanceSource::analytic ? analytic : numeric).push_back(h);
  }
  REQUIRE(analytic.size() == 1);
  CHECK(analytic[0].order == 3);
  CHECK_THAT(analytic[0].energy, WithinRel(19.413219804902114, 1e-14));
  REQUIRE(numeric.size() == 1);
  CHECK(numeric[0].order == 3);
  CHECK_THAT(numeric[0].energy, WithinRel(analytic[0].energy, 1e-5));
  CHECK_THAT(numeric[0].t2, WithinAbs(1.0, 1e-6));
}

TEST_CASE("dissipative resonance stays near full transmission") {
  SweepSpec spec = well25(kE3 - 0.5, kE3 + 0.5, 21);
  spec.nu_values = {1e-3};
  const auto scan = find_resonances(spec, default_solver_config(spec.well));
  const auto it = std::find_if(scan.hits.begin(), scan.hits.end(), [](const auto& h) {
    return h.source == ResonanceSource::numeric;
  });
  REQUIRE(it != scan.hits.end());
  CHECK(std::abs(it->t2 - 1.0) < 1e-5);
}

TEST_CASE("vanishing well is flagged degenerate") {
  SweepSpec spec;
  spec.well = {1e-12, 1.0};
  spec.energies = linspace(0.5, 5.0, 20);
  const auto scan = find_resonances(spec, default_solver_config(spec.well));
  CHECK(scan.degenerate);
  CHECK(std::none_of(scan.hits.begin(), scan.hits.end(),
                     [](const auto& h) { return h.source == ResonanceSource::numeric; }));
}

TEST_CASE("no resonance in range gives no hits") {
  SweepSpec spec = well25(0.5, 10.0, 30);
  spec.nu_values = {0.0};
  const auto scan = find_resonances(spec, default_solver_config(spec.well));
  CHECK(std::none_of(scan.hits.begin(), scan.hits.end(),
                     [](const auto& h) { return h.source == ResonanceSource::analytic; }));
}
