#include <doctest.h>

#include "properties.hpp"

namespace {

void report(const props::Outcome& o) {
  INFO("checked " << o.checked << ", worst " << o.worst << ", first failure: " << o.first_failure);
  CHECK(o.ok());
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("payoff brackets tighten with depth") { report(props::bracket_monotonicity(40, 101)); }

TEST_CASE("hider LP strong duality") { report(props::lp_duality(300, 102)); }

TEST_CASE("solved games") {
  const auto solutions = props::solve_sample(40, 103);
  report(props::mixture_support(solutions));
  report(props::floor_respect(solutions));
}

TEST_CASE("Monte-Carlo agreement") { report(props::monte_carlo_agreement(20, 20000, 104)); }

TEST_CASE("Gittins replay") { report(props::gittins_replay(60, 105)); }

}  // TEST_SUITE
