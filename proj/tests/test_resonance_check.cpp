#include <catch_amalgamated.hpp>

#include <numbers>

#include "ramsauer/resonance_check.hpp"

using namespace ramsauer;

namespace {

ScatteringProblem tuned(int order, double depth, double width, double nu) {
  const double p = order * std::numbers::pi / width;
  return {{depth, width}, 0.5 * p * p - depth, nu, {}};
}

SolverConfig config(double width) {
  SolverConfig cfg;
  cfg.step = width / 1000;
  return cfg;
}

}  // namespace

TEST_CASE("resonance chain closes at nu = 0") {
  const auto rep = resonance_limit_check(tuned(3, 25.0, 1.0, 0.0), config(1.0));
  CHECK(rep.order == 3);
  REQUIRE(rep.checks.size() == 6);
  for (const auto& c : rep.checks) {
    INFO(c.name << " residual " << c.residual << " limit " << c.tolerance);
    CHECK(c.passed);
  }
  CHECK(rep.passed);
}

TEST_CASE("resonance chain closes to the expected order in nu") {
  for (int order : {1, 2, 3}) {
    for (double nu : {1e-3, 5e-4}) {
      const auto rep = resonance_limit_check(tuned(order, 2.0, 1.0, nu), config(1.0));
      INFO("order " << order << " nu " << nu);
      CHECK(rep.order == order);
      for (const auto& c : rep.checks) {
        INFO(c.name << " residual " << c.residual << " limit " << c.tolerance);
        CHECK(c.passed);
      }
    }
  }
}

TEST_CASE("off-resonance problem fails the chain") {
  const ScatteringProblem p{{2.5, 1.0}, 2.0, 0.0, {}};
  const auto rep = resonance_limit_check(p, config(1.0));
  CHECK_FALSE(rep.passed);
}
