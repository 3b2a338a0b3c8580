#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hideseek/gittins.hpp"
#include "oracles.hpp"

using namespace hideseek;

namespace {

std::vector<std::size_t> boxes_of(SearchSequence& xi, std::size_t len) {
  const auto b = xi.prefix(len);
  return {b.begin(), b.end()};
}

}  // namespace

TEST_SUITE("gittins_engine") {

TEST_CASE("gittins_index is a direct product") {
  CHECK(gittins_index(0.5, 0.5, 1.0, 0) == doctest::Approx(0.25));
  CHECK(gittins_index(0.5, 0.5, 1.0, 2) == doctest::Approx(0.0625));
  CHECK(gittins_index(0.0, 0.3, 2.0, 4) == 0.0);
  CHECK(gittins_index(0.3, 0.2, 4.0, 3) == doctest::Approx(0.3 * std::pow(0.8, 3) * 0.2 / 4.0).epsilon(1e-14));
  CHECK(gittins_index(0.4, 1.0, 1.0, 1) == 0.0);
}

TEST_CASE("symmetric ties follow the ordering") {
  const auto g = make_game({1, 1}, {0.5, 0.5});
  auto xi = gittins_sequence(g, HidingStrategy({0.5, 0.5}), TieOrdering({1, 0}), 4);
  CHECK(boxes_of(xi, 4) == std::vector<std::size_t>{1, 0, 1, 0});
}

TEST_CASE("hand-traced sequence against p0") {
  const auto g = make_game({1, 1}, {0.75, 0.5});
  auto xi = gittins_sequence(g, p0(g), TieOrdering::identity(2), 6);
  CHECK(boxes_of(xi, 6) == std::vector<std::size_t>{0, 1, 1, 0, 1, 1});
}

TEST_CASE("zero mass box is never searched") {
  const auto g = make_game({1, 3}, {0.5, 0.2});
  auto xi = gittins_sequence(g, HidingStrategy({1.0, 0.0}), TieOrdering::identity(2), 5);
  CHECK(boxes_of(xi, 5) == std::vector<std::size_t>{0, 0, 0, 0, 0});
  CHECK(xi.degenerate_support());
  REQUIRE(xi.visit_limit(1).has_value());
  CHECK(*xi.visit_limit(1) == 0);
  CHECK_FALSE(xi.visit_limit(0).has_value());
}

TEST_CASE("perfect box is searched once") {
  const auto g = make_game({1, 1}, {0.5, 1.0}, true);
  auto xi = gittins_sequence(g, HidingStrategy({0.5, 0.5}), TieOrdering::identity(2), 10);
  CHECK(xi.visits(1) == 1);
  REQUIRE(xi.visit_limit(1).has_value());
  CHECK(*xi.visit_limit(1) == 1);
}

TEST_CASE("initial orderings are rotations") {
  const auto three = initial_orderings(3);
  REQUIRE(three.size() == 3);
  CHECK(three[0] == TieOrdering({0, 1, 2}));
  CHECK(three[1] == TieOrdering({1, 2, 0}));
  CHECK(three[2] == TieOrdering({2, 0, 1}));
  CHECK(initial_orderings(1).size() == 1);
  const auto two = initial_orderings(2);
  CHECK(two[1] == TieOrdering({1, 0}));
  CHECK_ERROR_CODE(initial_orderings(0), ErrorCode::EmptyGame);
}

TEST_CASE("all orderings") {
  CHECK(all_orderings(2).size() == 2);
  const auto six = all_orderings(3);
  REQUIRE(six.size() == 6);
  CHECK(six.front() == TieOrdering({0, 1, 2}));
  CHECK(six.back() == TieOrdering({2, 1, 0}));
  CHECK(all_orderings(8).size() == 40320);
  CHECK_ERROR_CODE(all_orderings(9), ErrorCode::CapExceeded);
  CHECK_ERROR_CODE(all_orderings(9, 8), ErrorCode::CapExceeded);
}

TEST_CASE("tie ordering must be a permutation") {
  CHECK_ERROR_CODE(TieOrdering({0, 0}), ErrorCode::InvalidOrdering);
  CHECK_ERROR_CODE(TieOrdering({0, 2}), ErrorCode::InvalidOrdering);
  const TieOrdering o({2, 0, 1});
  CHECK(o.rank(2) == 0);
  CHECK(o.rank(1) == 2);
}

TEST_CASE("cyclic sequence under the identity order") {
  const auto g = make_cyclic_game(0.25, {1, 2}, {1, 1});
  auto xi = cyclic_sequence(g, p0(g), TieOrdering::identity(2));
  REQUIRE(xi.cycle().has_value());
  CHECK(xi.cycle()->pattern == std::vector<BoxIndex>{0, 1, 1});
  CHECK(xi.cycle()->entry == std::vector<std::size_t>{0, 0});
  CHECK(xi.cycle()->start == 0);
  CHECK(boxes_of(xi, 9) == std::vector<std::size_t>{0, 1, 1, 0, 1, 1, 0, 1, 1});
}

TEST_CASE("cyclic sequence under the reversed order") {
  const auto g = make_cyclic_game(0.25, {1, 2}, {1, 1});
  auto xi = cyclic_sequence(g, p0(g), TieOrdering({1, 0}));
  REQUIRE(xi.cycle().has_value());
  const auto& pat = xi.cycle()->pattern;
  const bool ok = pat == std::vector<BoxIndex>{1, 0, 1} || pat == std::vector<BoxIndex>{1, 1, 0};
  CHECK(ok);
  // The realized prefix must still be a Gittins sequence against p0.
  CHECK(is_gittins_prefix(g, p0(g), xi.prefix(60)));
}

TEST_CASE("cyclic sequence needs a cyclic game") {
  const auto g = make_game({1, 1}, {0.5, 0.3});
  CHECK_ERROR_CODE(cyclic_sequence(g, p0(g), TieOrdering::identity(2)), ErrorCode::NotCyclic);
}

TEST_CASE("cyclic sequence away from p0 still finds its cycle") {
  const auto g = make_cyclic_game(0.25, {1, 2}, {1, 1});
  auto xi = cyclic_sequence(g, HidingStrategy({0.3, 0.7}), TieOrdering::identity(2));
  REQUIRE(xi.cycle().has_value());
  std::vector<std::size_t> counts(2, 0);
  for (BoxIndex b : xi.cycle()->pattern) ++counts[b];
  CHECK(counts == std::vector<std::size_t>{1, 2});
  CHECK(is_gittins_prefix(g, HidingStrategy({0.3, 0.7}), xi.prefix(90)));
}

TEST_CASE("p0 sequence starts with the ordering") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = sample_game(SampleScheme::varied(), 4, seed);
    for (const auto& order : initial_orderings(4)) {
      auto xi = p0_sequence(g, order, 50);
      const auto first = xi.prefix(4);
      CHECK(std::equal(first.begin(), first.end(), order.order().begin()));
    }
  }
}

TEST_CASE("generator agrees with the pow-based oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto g = sample_game(SampleScheme::varied(), n, rng.split(trial));
    std::vector<double> p(n);
    double s = 0.0;
    for (auto& v : p) s += (v = rng.uniform(0.05, 1.0));
    for (auto& v : p) v /= s;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = (i + trial) % n;
    const HidingStrategy strat(p);
    auto xi = gittins_sequence(g, strat, TieOrdering(order), 200);
    const std::vector<double> t(g.times().begin(), g.times().end());
    const std::vector<double> a(g.alphas().begin(), g.alphas().end());
    CHECK(boxes_of(xi, 200) == oracle::gittins(t, a, p, order, 200));
  }
}

TEST_CASE("visit times accumulate search times") {
  const auto g = make_game({1, 2}, {0.5, 0.25});
  auto xi = SearchSequence::periodic(g, {}, {0, 1});
  xi.extend_to(6);
  const auto v0 = xi.visit_times(0);
  const auto v1 = xi.visit_times(1);
  CHECK(std::vector<double>(v0.begin(), v0.end()) == std::vector<double>{1, 4, 7});
  CHECK(std::vector<double>(v1.begin(), v1.end()) == std::vector<double>{3, 6, 9});
  CHECK(xi.elapsed() == 9.0);
  CHECK(*xi.periodic_revisit_gap(0) == 3.0);
}

TEST_CASE("periodic sequence validates boxes") {
  const auto g = make_game({1, 1}, {0.5, 0.5});
  CHECK_ERROR_CODE(SearchSequence::periodic(g, {}, {}), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(SearchSequence::periodic(g, {3}, {0}), ErrorCode::InvalidArgument);
}

TEST_CASE("extend_until_visits on a box that is never searched") {
  const auto g = make_game({1, 1}, {0.5, 0.5});
  auto xi = SearchSequence::periodic(g, {}, {0});
  CHECK_ERROR_CODE(xi.extend_until_visits(1, 1), ErrorCode::InsufficientPrefix);
}

TEST_CASE("replay check rejects a non-Gittins prefix") {
  const auto g = make_game({1, 1}, {0.75, 0.5});
  const std::vector<BoxIndex> good{0, 1, 1, 0, 1, 1};
  const std::vector<BoxIndex> bad{0, 0, 1, 1};
  CHECK(is_gittins_prefix(g, p0(g), good));
  CHECK_FALSE(is_gittins_prefix(g, p0(g), bad));
}

}  // TEST_SUITE
