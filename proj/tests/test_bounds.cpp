#include <doctest.h>

#include "helpers.hpp"
#include "hideseek/bounds.hpp"

using namespace hideseek;

TEST_SUITE("bounds") {

TEST_CASE("value bounds") {
  const auto a = value_bounds(make_game({1, 2}, {0.5, 0.25}));
  CHECK(a.lower == doctest::Approx(8.0));
  CHECK(a.upper == doctest::Approx(10.0));
  const auto b = value_bounds(make_game({1, 1}, {0.5, 0.5}));
  CHECK(b.lower == doctest::Approx(2.0));
  CHECK(b.upper == doctest::Approx(4.0));
  const auto c = value_bounds(make_game({3}, {0.6}));
  CHECK(c.lower == c.upper);
  CHECK(c.lower == doctest::Approx(5.0));
}

TEST_CASE("hider floor for identical boxes") {
  const auto f = hider_floor(make_game({1, 1}, {0.5, 0.5}));
  CHECK(f.M == doctest::Approx(4.0));
  CHECK(f.m == std::vector<long>{5, 5});
  CHECK(f.c[0] == doctest::Approx(32.0));
  CHECK(f.c[1] == doctest::Approx(32.0));
  CHECK(f.eta[0] == doctest::Approx(1.0 / 17.0));
  CHECK(f.delta[1] == doctest::Approx(0.99 / 17.0));
  CHECK_FALSE(f.underflow);
}

TEST_CASE("hider floor for one box") {
  const auto f = hider_floor(make_game({2}, {0.5}));
  CHECK(f.c[0] == 0.0);
  CHECK(f.eta[0] == 1.0);
  CHECK(f.delta[0] == doctest::Approx(0.99));
}

TEST_CASE("hider floor search counts") {
  const auto f = hider_floor(make_game({1, 2}, {0.5, 0.25}));
  CHECK(f.M == doctest::Approx(10.0));
  CHECK(f.m == std::vector<long>{11, 6});
}

TEST_CASE("shrink factor") {
  const auto g = make_game({1, 1}, {0.5, 0.5});
  const auto f = hider_floor(g, FloorOptions{.shrink = 0.5});
  CHECK(f.delta[0] == doctest::Approx(0.5 / 17.0));
  CHECK_ERROR_CODE(hider_floor(g, FloorOptions{.shrink = 1.0}), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(hider_floor(g, FloorOptions{.shrink = 0.0}), ErrorCode::InvalidArgument);
}

TEST_CASE("perfect boxes have no floors") {
  CHECK_ERROR_CODE(hider_floor(make_game({1, 1}, {0.5, 1.0}, true)), ErrorCode::PerfectDetectionUnsupported);
}

TEST_CASE("floors are strictly inside the simplex on sampled games") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = sample_game(SampleScheme::varied(), 2 + seed % 4, seed);
    const auto f = hider_floor(g);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(f.eta[i] > 0.0);
      CHECK(f.delta[i] < f.eta[i]);
      sum += f.delta[i];
    }
    CHECK(sum < 1.0);
  }
}

TEST_CASE("floors that underflow") {
  const auto g = make_game({1, 1, 1}, {1e-3, 0.999, 0.999});
  CHECK_ERROR_CODE(hider_floor(g), ErrorCode::FloorUnderflow);
  const auto f = hider_floor(g, FloorOptions{.shrink = 0.99, .absolute_floor = 1e-12});
  CHECK(f.underflow);
  CHECK(f.delta[0] == doctest::Approx(1e-12));
}

}  // TEST_SUITE
