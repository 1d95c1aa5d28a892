#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ramsauer/analytic.hpp"

using namespace ramsauer;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

WaveNumbers wn_of(double e, double v) { return wave_numbers({{v, 1.0}, e, 0.0, {}}); }

// Reference amplitudes from a 40-digit solve of the four matching equations.
struct Reference {
  double e, v, l;
  double t2, r2;
  Complex a, b, c, d;
};

const Reference kReferences[] = {
    {2.0, 2.5, 1.0, 0.99655447231167796, 0.0034455276883220387,
     {-0.0089583719896373006, -0.058010992575694829},
     {0.5490971734700453, 0.8336946481769479},
     {0.83184027133506045, -0.0096684987626158048},
     {0.15920135667530225, -0.048342493813079024}},
    {1.0, 4.0, 2.0, 0.99863346850307995, 0.0013665314969200508,
     {-0.0020497972453800762, 0.036909752480514998},
     {-0.93217928661239985, -0.3601044933264194},
     {0.7230402477253651, 0.010201604682345197},
     {0.27490995502925483, 0.026708147798169801}},
    {0.3, 10.0, 0.7, 0.98990362897521963, 0.010096371024780373,
     {-0.010702153286267196, 0.09990913341540709},
     {-0.90206823059182144, 0.41973388751941401},
     {0.58089417829841801, 0.041429118676961376},
     {0.4084036684153148, 0.058480014738445715}},
};

}  // namespace

TEST_CASE("transmission and reflection match high-precision references") {
  for (const auto& ref : kReferences) {
    const WaveNumbers wn = wave_numbers({{ref.v, ref.l}, ref.e, 0.0, {}});
    CHECK_THAT(transmission_probability(wn, ref.l), WithinRel(ref.t2, 1e-13));
    CHECK_THAT(reflection_probability(wn, ref.l), WithinRel(ref.r2, 1e-11));

    const auto amps = scattering_amplitudes(wn, ref.l);
    CHECK(std::abs(amps.refl_amp - ref.a) < 1e-13);
    CHECK(std::abs(amps.trans_amp - ref.b) < 1e-13);
    CHECK(std::abs(amps.interior_amps.first - ref.c) < 1e-13);
    CHECK(std::abs(amps.interior_amps.second - ref.d) < 1e-13);
    CHECK_THAT(amps.trans_prob, WithinRel(ref.t2, 1e-13));
    CHECK_THAT(amps.refl_prob, WithinRel(ref.r2, 1e-11));
  }
}

TEST_CASE("field and derivative are continuous at both edges") {
  const double l = 1.3;
  const WaveNumbers wn = wave_numbers({{6.0, l}, 0.7, 0.0, {}});
  const auto amps = scattering_amplitudes(wn, l);
  for (double edge : {0.0, l}) {
    const auto below = field_at(amps, wn, l, edge - 1e-12);
    const auto above = field_at(amps, wn, l, edge + 1e-12);
    CHECK(std::abs(below.value - above.value) < 1e-10);
    CHECK(std::abs(below.derivative - above.derivative) < 1e-9);
  }
  const auto left = field_at(amps, wn, l, -0.4);
  CHECK(std::abs(left.value - (std::exp(Complex(0, -0.4 * wn.k)) +
                               amps.refl_amp * std::exp(Complex(0, 0.4 * wn.k)))) < 1e-14);
}

TEST_CASE("unitarity holds to rounding over a parameter grid") {
  for (double e : {0.05, 0.4, 1.0, 3.7, 12.0}) {
    for (double v : {0.1, 1.0, 8.0, 40.0}) {
      for (double l : {0.3, 1.0, 2.9}) {
        const WaveNumbers wn = wave_numbers({{v, l}, e, 0.0, {}});
        const double sum = transmission_probability(wn, l) + reflection_probability(wn, l);
        CHECK_THAT(sum, WithinAbs(1.0, 1e-13));
      }
    }
  }
}

TEST_CASE("resonance energies give perfect transmission") {
  SECTION("order 3 of V = 25, L = 1") {
    const SquareWell well{25.0, 1.0};
    const auto res = resonance_energies(well, {}, 4);
    REQUIRE(res.size() == 2);
    CHECK(res[0].order == 3);
    CHECK_THAT(res[0].energy, WithinRel(19.413219804902114, 1e-14));
    CHECK_THAT(res[1].energy, WithinRel(8.0 * std::numbers::pi * std::numbers::pi - 25.0, 1e-14));
    const WaveNumbers wn = wave_numbers({well, res[0].energy, 0.0, {}});
    CHECK_THAT(transmission_probability(wn, 1.0), WithinAbs(1.0, 1e-12));
    CHECK(reflection_probability(wn, 1.0) < 1e-12);
  }
  SECTION("V = 0.5, L = pi has its first resonance at order 2") {
    const SquareWell well{0.5, std::numbers::pi};
    const auto res = resonance_energies(well, {}, 2);
    REQUIRE(res.size() == 1);
    CHECK(res[0].order == 2);
    CHECK_THAT(res[0].energy, WithinRel(1.5, 1e-14));
  }
  SECTION("units enter through hbar and mass") {
    const PhysicalConstants c{0.5, 2.0};
    const SquareWell well{1.0, 1.0};
    for (const auto& r : resonance_energies(well, c, 5)) {
      const WaveNumbers wn = wave_numbers({well, r.energy, 0.0, c});
      CHECK_THAT(wn.q * well.width, WithinRel(r.order * std::numbers::pi, 1e-13));
    }
  }
  SECTION("invalid order") {
    CHECK_THROWS_AS(resonance_energies({25.0, 1.0}, {}, 0), DomainError);
  }
}

TEST_CASE("orders_covering includes every resonance up to the bound") {
  const SquareWell well{25.0, 1.0};
  const int top = orders_covering(well, {}, 40.0);
  const auto res = resonance_energies(well, {}, top);
  REQUIRE(!res.empty());
  CHECK(res.back().energy >= 40.0);
  CHECK(res.front().order == 3);
}

TEST_CASE("zero depth is free propagation") {
  const WaveNumbers wn{1.3, 1.3, 1.0};
  CHECK(transmission_probability(wn, 2.0) == 1.0);
  CHECK(reflection_probability(wn, 2.0) == 0.0);
}

TEST_CASE("Ramsauer minimum transmission off resonance") {
  // Between the first two resonances of V = 25 the transmission dips well below 1.
  CHECK(transmission_probability(wn_of(5.0, 25.0), 1.0) < 0.9);
}
