#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "hideseek/game_lp.hpp"
#include "oracles.hpp"

using namespace hideseek;

namespace {

PayoffMatrix matrix(const std::vector<std::vector<double>>& cols) {
  PayoffMatrix U(cols.front().size());
  for (const auto& c : cols) U.add_column(c);
  return U;
}

double dual_residual(const LpSolution& s) { return std::abs(s.v - s.dual_value) / std::abs(s.v); }

}  // namespace

TEST_SUITE("game_lp") {

TEST_CASE("symmetric 2x2 game") {
  const auto U = matrix({{3, 4}, {4, 3}});
  const std::vector<double> delta{0.05, 0.05};
  const auto s = solve_hider_lp(U, delta);
  CHECK(s.p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.v == doctest::Approx(3.5).epsilon(1e-12));
  CHECK_FALSE(s.any_binding());
  const auto theta = recover_searcher_mixture(U, delta, s);
  CHECK(theta[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(theta[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dual_residual(s) < 1e-9);
}

TEST_CASE("single column puts free mass on the better row") {
  const auto U = matrix({{3, 4}});
  const std::vector<double> delta{0.05, 0.05};
  const auto s = solve_hider_lp(U, delta);
  CHECK(s.p[0] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(s.p[1] == doctest::Approx(0.95).epsilon(1e-12));
  CHECK(s.v == doctest::Approx(3.95).epsilon(1e-12));
  CHECK(s.binding == std::vector<bool>{true, false});
  const auto theta = recover_searcher_mixture(U, delta, s);
  CHECK(theta == std::vector<double>{1.0});
}

TEST_CASE("constant matrix") {
  const auto U = matrix({{2, 2}, {2, 2}});
  const std::vector<double> delta{0.05, 0.05};
  const auto s = solve_hider_lp(U, delta);
  CHECK(s.v == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.p[0] >= 0.05 - 1e-12);
  CHECK(s.p[1] >= 0.05 - 1e-12);
  const auto again = solve_hider_lp(U, delta);
  CHECK(again.p[0] == s.p[0]);
}

TEST_CASE("dominated column gets no weight") {
  const auto U = matrix({{3, 4}, {4, 3}, {5, 6}});
  const std::vector<double> delta{0.05, 0.05};
  const auto s = solve_hider_lp(U, delta);
  const auto theta = recover_searcher_mixture(U, delta, s);
  CHECK(theta[2] == 0.0);
  CHECK(s.v == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("scaling the matrix scales the value") {
  const auto U = matrix({{3, 7, 2}, {5, 1, 6}, {4, 4, 4}});
  const std::vector<double> delta{0.01, 0.01, 0.01};
  const auto s = solve_hider_lp(U, delta);
  for (double k : {1e-3, 7.0, 1e4}) {
    const auto t = solve_hider_lp(U.scaled(k), delta);
    CHECK(rel_close(t.v, k * s.v, 1e-10));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(t.p[i] - s.p[i]) < 1e-9);
  }
}

TEST_CASE("appending columns never raises the value") {
  Rng rng(3);
  PayoffMatrix U(3);
  const std::vector<double> delta{0.02, 0.02, 0.02};
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 25; ++k) {
    const std::vector<double> col{rng.uniform(1, 10), rng.uniform(1, 10), rng.uniform(1, 10)};
    U.add_column(col);
    const auto s = solve_hider_lp(U, delta);
    CHECK(s.v <= prev + 1e-12 * prev);
    prev = s.v;
  }
}

TEST_CASE("agrees with brute-force vertex enumeration") {
  Rng rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const std::size_t K = 1 + trial % 6;
    PayoffMatrix U(n);
    std::vector<std::vector<double>> rows(n, std::vector<double>(K));
    for (std::size_t k = 0; k < K; ++k) {
      std::vector<double> col(n);
      for (std::size_t i = 0; i < n; ++i) rows[i][k] = col[i] = rng.uniform(1, 10);
      U.add_column(col);
    }
    std::vector<double> delta(n);
    for (auto& d : delta) d = rng.uniform(0.0, 0.2 / static_cast<double>(n));
    const auto s = solve_hider_lp(U, delta);
    const auto ref = oracle::brute_force_hider_lp(rows, delta);
    CHECK(rel_close(s.v, ref.v, 1e-10));
    CHECK(dual_residual(s) < 1e-9);

    const auto theta = recover_searcher_mixture(U, delta, s);
    std::size_t support = 0;
    double sum = 0.0;
    for (double w : theta) {
      support += w > 0.0;
      sum += w;
    }
    CHECK(support <= n);
    CHECK(std::abs(sum - 1.0) < 1e-12);
    // Every row earns at most the price of the sum constraint, with equality
    // off the floors, and p weighs the rows back to v.
    const auto rows_theta = row_payoffs(U, theta);
    const double top = *std::max_element(rows_theta.begin(), rows_theta.end());
    double weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      weighted += s.p[i] * rows_theta[i];
      if (!s.binding[i]) CHECK(rel_close(rows_theta[i], top, 1e-9));
    }
    CHECK(rel_close(weighted, s.v, 1e-9));
  }
}

TEST_CASE("input errors") {
  PayoffMatrix empty(2);
  const std::vector<double> delta{0.1, 0.1};
  CHECK_ERROR_CODE(solve_hider_lp(empty, delta), ErrorCode::InvalidArgument);
  const auto U = matrix({{3, 4}});
  CHECK_ERROR_CODE(solve_hider_lp(U, std::vector<double>{0.1}), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(solve_hider_lp(U, std::vector<double>{0.6, 0.5}), ErrorCode::Infeasible);
  PayoffMatrix M(2);
  CHECK_ERROR_CODE(M.add_column(std::vector<double>{1.0}), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(M.add_column(std::vector<double>{1.0, -1.0}), ErrorCode::InvalidArgument);
  CHECK_ERROR_CODE(M.add_column(std::vector<double>{1.0, std::nan("")}), ErrorCode::InvalidArgument);
}

TEST_CASE("single box") {
  const auto U = matrix({{4}});
  const auto s = solve_hider_lp(U, std::vector<double>{0.99});
  CHECK(s.p[0] == doctest::Approx(1.0));
  CHECK(s.v == doctest::Approx(4.0));
}

TEST_CASE("Bland's rule gives the same optimum") {
  const auto U = matrix({{3, 7, 2}, {5, 1, 6}, {4, 4, 4}, {6, 2, 3}});
  const std::vector<double> delta{0.01, 0.01, 0.01};
  const auto a = solve_hider_lp(U, delta);
  const auto b = solve_hider_lp(U, delta, LpOptions{.bland = true});
  CHECK(rel_close(a.v, b.v, 1e-12));
  CHECK(b.used_bland);
}

}  // TEST_SUITE
