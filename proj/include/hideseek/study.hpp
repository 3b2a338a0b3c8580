#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hideseek/game.hpp"

namespace hideseek {

struct BatchRecord {
  std::size_t index = 0;
  std::string scheme;
  std::vector<double> t;
  std::vector<double> alpha;
  double v_star = 0.0;
  double u_p0 = 0.0;
  bool p0_tested = false;
  bool p0_optimal = false;
  double pct_below = 0.0;  // 100 (v* - u(p0)) / v*
  std::size_t iterations = 0;
  double wall_time = 0.0;  // seconds
  std::string error;       // empty on success

  bool ok() const { return error.empty(); }
};

struct BatchOptions {
  double epsilon = 1e-6;
  /// Largest n for which the all-orderings p0 test runs.
  std::size_t p0_test_max_n = 7;
  unsigned threads = 1;
};

/// Game `index` of a batch uses its own stream derived from (seed, index).
SearchGame batch_game(const SampleScheme& scheme, std::size_t n, std::uint64_t seed, std::size_t index);

std::vector<BatchRecord> run_batch(const SampleScheme& scheme, std::size_t n, std::size_t count, std::uint64_t seed,
                                   const BatchOptions& options = {});

struct BatchSummary {
  std::size_t count = 0;
  std::size_t failures = 0;
  double mean_pct_below = 0.0;
  double p95_pct_below = 0.0;
  std::size_t tested = 0;
  double fraction_p0_optimal = 0.0;  // over records where the p0 test ran
  std::size_t solved = 0;            // records where the iterative solver ran
  double mean_iterations = 0.0;
  double p95_iterations = 0.0;
};

/// Failed records are counted but excluded from the statistics.
BatchSummary summarize(const std::vector<BatchRecord>& records);

/// 95th percentile by linear interpolation between order statistics.
double percentile(std::vector<double> values, double q);

struct RuckleRecord {
  double alpha = 0.0;
  double p0_1 = 0.0;
  double p_star_1 = 0.0;
  int h = 0;
  bool p0_optimal = false;
  double tie_residual = 0.0;  // relative index gap at search h
};

/// Two boxes with t = (1, 1) and alpha = (a, 1) for each a in the grid.
std::vector<RuckleRecord> ruckle_sweep(const std::vector<double>& alphas);

/// First search at which the two indices agree within relative `tol` when
/// box 1 is hidden with probability p1 and alpha_2 = 1.
int ruckle_h(double alpha, double p1, double tol = 1e-6, double* residual = nullptr);

struct TwoBoxStudy {
  std::size_t n_suboptimal = 0;
  std::size_t n_pstar_greater = 0;
  std::size_t n_pstar_smaller = 0;
};

/// Samples varied two-box games with box 1 relabelled to the lower future
/// benefit and counts the sign of p*_1 - p0_1 where p0 is suboptimal.
TwoBoxStudy two_box_study(std::size_t count, std::uint64_t seed, double epsilon = 1e-6);

/// The game used by two_box_study for draw `index`, after relabelling.
SearchGame two_box_game(std::uint64_t seed, std::size_t index);

std::string batch_csv(const std::vector<BatchRecord>& records);
std::vector<BatchRecord> parse_batch_csv(std::string_view text);
std::string ruckle_csv(const std::vector<RuckleRecord>& records);
std::vector<RuckleRecord> parse_ruckle_csv(std::string_view text);

}  // namespace hideseek
