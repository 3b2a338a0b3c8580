// Acceptance suite: one PASS/FAIL line per criterion, then a nonzero exit
// status if any criterion failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hideseek/bounds.hpp"
#include "hideseek/solver.hpp"
#include "hideseek/study.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace hideseek;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  std::string id;
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

SearchGame game_of(std::vector<double> t, std::vector<double> alpha, bool allow_perfect = false) {
  GameDescription d;
  d.t = std::move(t);
  d.alpha = std::move(alpha);
  d.allow_perfect = allow_perfect;
  return validate_game(d);
}

Criterion ac1() {
  Criterion c{"AC1", true, {}};
  const std::vector<std::pair<double, double>> singles{{2.0, 0.5}, {1.0, 0.1}, {3.7, 0.83}, {0.25, 0.999}};
  double worst = 0.0;
  double slowest = 0.0;
  for (const auto& [t, a] : singles) {
    const auto start = Clock::now();
    const auto sol = solve(game_of({t}, {a}));
    slowest = std::max(slowest, seconds_since(start));
    const double exact = t / a;
    worst = std::max({worst, std::abs(sol.U - exact) / exact, std::abs(sol.L - exact) / exact});
  }
  c.require(worst < 1e-9, "single-box relative error < 1e-9");
  c.require(slowest < 1e-3, "single-box solve < 1 ms");
  c.note(fmt("single box max rel err %.2e, slowest %.3f ms", worst, slowest * 1e3));

  std::mt19937_64 gen(2024);
  for (double a : {0.3, 0.5, 0.7}) {
    const auto sol = solve(game_of({1, 1}, {a, a}));
    const double exact = oracle::identical_boxes_value(a);
    const double err = std::abs(sol.U - exact) / exact;
    c.require(err < 1e-6 && std::abs(sol.L - exact) / exact < 1e-6, fmt("identical boxes alpha=%.1f", a));

    // Hider uniform over the two boxes against the alternating search.
    const auto seq = oracle::unroll({}, {0, 1}, 2000);
    const std::vector<double> t{1.0, 1.0};
    std::bernoulli_distribution coin(0.5);
    const std::size_t trials = 1'000'000;
    double sum = 0.0;
    double sq = 0.0;
    for (std::size_t r = 0; r < trials; ++r) {
      const double d = oracle::sample_detection(seq, t, coin(gen) ? 1 : 0, a, gen);
      sum += d;
      sq += d * d;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sq - sum * mean) / (trials - 1) / trials);
    const double z = std::abs(mean - exact) / se;
    c.require(z <= 4.0, fmt("Monte-Carlo agreement alpha=%.1f", a));
    c.note(fmt("alpha=%.1f: rel err %.1e", a, err) + fmt(", MC z=%.2f", z));
  }
  return c;
}

Criterion ac2() {
  Criterion c{"AC2", true, {}};
  const auto g = make_cyclic_game(0.25, {1, 2}, {1, 1});
  auto xi = cyclic_sequence(g, p0(g), TieOrdering::identity(2));
  const double exact[2] = {2.0, 10.0 / 3.0};
  for (BoxIndex i = 0; i < 2; ++i) {
    const double closed = payoff_cyclic(g, i, xi);
    const double err = std::abs(closed - exact[i]) / exact[i];
    c.require(err < 1e-12, fmt("closed form u(%g) within 1e-12", i + 1.0));
    const auto b = payoff(g, i, xi);
    const bool brackets = b.lower <= exact[i] * (1 + 1e-15) && b.upper >= exact[i] * (1 - 1e-15);
    const double dev = std::max(std::abs(b.lower - exact[i]), std::abs(b.upper - exact[i])) / exact[i];
    c.require(brackets && dev < 1e-10, fmt("series bracket u(%g) within 1e-10", i + 1.0));
    c.note(fmt("u(%g): closed-form rel err %.1e", i + 1.0, err) + fmt(", series [%.12f, %.12f]", b.lower, b.upper));
  }
  return c;
}

Criterion ac3() {
  Criterion c{"AC3", true, {}};
  double slowest = 0.0;
  for (double a : {0.65, 0.7, 0.9, 0.4, 0.5, 0.6}) {
    const auto start = Clock::now();
    const bool optimal = test_p0_optimality(game_of({1, 1}, {a, 1.0}, true)).optimal;
    slowest = std::max(slowest, seconds_since(start));
    const bool expected = a > 0.618;
    c.require(optimal == expected, fmt(expected ? "p0 optimal at alpha=%.2f" : "p0 suboptimal at alpha=%.2f", a));
  }
  for (double a : {0.3, 0.35}) {
    const auto start = Clock::now();
    const auto rec = ruckle_sweep({a}).front();
    slowest = std::max(slowest, seconds_since(start));
    c.require(rec.h == 3, fmt("h=3 at alpha=%.2f", a));
    c.note(fmt("alpha=%.2f: h=%g", a, rec.h) + fmt(", p*1=%.5f", rec.p_star_1));
  }
  c.require(slowest < 1.0, "each point < 1 s");
  c.note(fmt("slowest point %.3f s", slowest));
  return c;
}

Criterion ac4() {
  Criterion c{"AC4", true, {}};
  std::size_t games = 0;
  std::size_t violations = 0;
  const std::vector<SampleScheme> schemes{SampleScheme::varied(), SampleScheme::low(), SampleScheme::medium(),
                                          SampleScheme::high()};
  for (const auto& scheme : schemes) {
    for (std::size_t n : {2, 3}) {
      for (std::size_t k = 0; k < 500; ++k) {
        const auto g = batch_game(scheme, n, 4000 + n, k);
        const auto sol = solve(g);
        const auto vb = value_bounds(g);
        const double tol = 1e-9 * vb.upper;
        const bool ok = vb.lower <= sol.L + tol && sol.L <= sol.U + tol && sol.U <= vb.upper + tol;
        violations += ok ? 0 : 1;
        ++games;
      }
    }
  }
  c.require(violations == 0, "zero sandwich violations");
  c.note(fmt("%g games, %g violations", static_cast<double>(games), static_cast<double>(violations)));
  return c;
}

Criterion ac5() {
  Criterion c{"AC5", true, {}};
  const auto start = Clock::now();
  const auto n2_coarse = summarize(run_batch(SampleScheme::varied(), 2, 200, 51, BatchOptions{.epsilon = 1e-3}));
  const auto n2_fine = summarize(run_batch(SampleScheme::varied(), 2, 200, 52, BatchOptions{.epsilon = 1e-6}));
  const auto n3_coarse = summarize(run_batch(SampleScheme::varied(), 3, 200, 53, BatchOptions{.epsilon = 1e-3}));
  c.require(n2_coarse.mean_iterations >= 2 && n2_coarse.mean_iterations <= 9, "n=2 eps=1e-3 mean in [2, 9]");
  c.require(n2_coarse.p95_iterations <= 10, "n=2 eps=1e-3 p95 <= 10");
  c.require(n2_fine.mean_iterations >= 3 && n2_fine.mean_iterations <= 12, "n=2 eps=1e-6 mean in [3, 12]");
  c.require(n3_coarse.mean_iterations >= 5 && n3_coarse.mean_iterations <= 18, "n=3 eps=1e-3 mean in [5, 18]");
  c.require(n2_coarse.failures + n2_fine.failures + n3_coarse.failures == 0, "no failed games");
  c.note(fmt("n=2 eps=1e-3 mean %.2f", n2_coarse.mean_iterations) + fmt(" p95 %.1f", n2_coarse.p95_iterations));
  c.note(fmt("n=2 eps=1e-6 mean %.2f", n2_fine.mean_iterations));
  c.note(fmt("n=3 eps=1e-3 mean %.2f", n3_coarse.mean_iterations));
  c.note(fmt("%.2f s", seconds_since(start)));
  return c;
}

Criterion ac6() {
  Criterion c{"AC6", true, {}};
  const auto high = summarize(run_batch(SampleScheme::high(), 2, 1000, 61));
  const auto varied = summarize(run_batch(SampleScheme::varied(), 2, 1000, 62));
  c.require(std::abs(high.fraction_p0_optimal - 0.87) <= 0.05, "high fraction p0-optimal in 0.87 +- 0.05");
  c.require(std::abs(varied.mean_pct_below - 0.322) <= 0.15, "varied mean pct_below in 0.322 +- 0.15");
  c.require(high.failures + varied.failures == 0, "no failed games");
  c.note(fmt("high: p0 optimal in %.3f of %g games", high.fraction_p0_optimal, static_cast<double>(high.tested)));
  c.note(fmt("varied: mean pct_below %.3f, p95 %.3f", varied.mean_pct_below, varied.p95_pct_below));
  return c;
}

Criterion ac7() {
  Criterion c{"AC7", true, {}};
  const auto s = two_box_study(1000, 71);
  const double frac = s.n_suboptimal ? static_cast<double>(s.n_pstar_greater) / s.n_suboptimal : 0.0;
  c.require(s.n_suboptimal >= 500, "at least 500 games with p0 suboptimal");
  c.require(frac >= 0.90, "p*1 > p0_1 in at least 90%");
  c.note(fmt("%g of %g suboptimal games", static_cast<double>(s.n_pstar_greater), static_cast<double>(s.n_suboptimal)) +
         fmt(" (%.1f%%)", 100.0 * frac));
  return c;
}

Criterion ac8() {
  Criterion c{"AC8", true, {}};
  auto check = [&](const char* name, const props::Outcome& o) {
    c.require(o.ok(), std::string(name) + (o.first_failure.empty() ? "" : " at " + o.first_failure));
    c.note(std::string(name) + fmt(" %g checked, worst %.2g", static_cast<double>(o.checked), o.worst));
  };
  check("bracket monotonicity", props::bracket_monotonicity(100, 801));
  check("LP duality", props::lp_duality(1000, 802));
  const auto solutions = props::solve_sample(100, 803);
  check("mixture support", props::mixture_support(solutions));
  check("hider floors", props::floor_respect(solutions));
  check("Monte-Carlo 4 SE", props::monte_carlo_agreement(50, 100000, 804));
  check("Gittins replay", props::gittins_replay(200, 805));
  return c;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  int failed = 0;
  for (auto run : {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8}) {
    const auto t0 = Clock::now();
    Criterion c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    if (c.id.empty()) c.id = "AC?";
    failed += c.pass ? 0 : 1;
    std::printf("[%s] %s (%.2f s) %s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(), seconds_since(t0), c.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d of 8 criteria failed, %.1f s total\n", failed, seconds_since(start));
  return failed == 0 ? 0 : 1;
}
