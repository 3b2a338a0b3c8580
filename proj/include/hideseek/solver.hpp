#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hideseek/bounds.hpp"
#include "hideseek/game.hpp"
#include "hideseek/gittins.hpp"
#include "hideseek/payoff.hpp"

namespace hideseek {

struct SolveConfig {
  double epsilon = 1e-6;  // stop once U / L - 1 < epsilon
  std::size_t max_iterations = 10000;
  double shrink = 0.99;
  double payoff_rel_tol = kDefaultPayoffRelTol;
  double absolute_floor = 0.0;
  /// Start from all n! orderings instead of the n rotations.
  bool all_initial_orderings = false;
};

struct IterationRecord {
  std::size_t iter = 0;
  double U = 0.0;
  double L = 0.0;
  double gap = 0.0;
  long added_seq = -1;  // id of the column appended after this iteration, -1 if none
  std::vector<bool> binding;
};

enum class Termination { Converged, MaxIterations };

const char* to_string(Termination t) noexcept;

struct Solution {
  HidingStrategy p_star;
  std::vector<SearchSequence> sequences;          // the final column set D
  std::vector<std::vector<PayoffBracket>> payoffs;  // payoffs[k][i] = u(i, sequences[k])
  std::vector<double> theta;                    // searcher weight per stored sequence
  double L = 0.0;
  double U = 0.0;
  std::size_t iterations = 0;
  std::vector<IterationRecord> trace;
  Termination termination = Termination::Converged;
  HiderFloor floor;

  /// Indices k with theta[k] > 0.
  std::vector<std::size_t> support() const;
  /// u(i, theta) for every box, from the stored payoff midpoints.
  std::vector<double> mixture_payoffs() const;
};

struct BestResponse {
  PayoffBracket value;
  SearchSequence xi;
  /// Set when p has zero entries; the value then covers the supported boxes only.
  bool restricted = false;
};

/// u(p) through a Gittins sequence against p (identity tie order).
BestResponse best_response_value(const SearchGame& game, const HidingStrategy& p,
                                 double rel_tol = kDefaultPayoffRelTol);

/// Iterative best-response column generation with certified bounds.
Solution solve(const SearchGame& game, const SolveConfig& config = {});

struct P0TestOptions {
  std::size_t cap = kDefaultOrderingCap;
  std::size_t horizon = 64;  // prefix length compared when removing duplicate sequences
  double threshold = 1e-9;
  double payoff_rel_tol = kDefaultPayoffRelTol;
};

struct P0TestResult {
  bool optimal = false;
  double v_D = 0.0;
  PayoffBracket u_p0;
  double relative_gap = 0.0;  // (v_D - u(p0)) / v_D
  HidingStrategy p_D;         // optimal hider strategy of the restricted game
  std::vector<SearchSequence> sequences;
  std::vector<double> theta;
  std::size_t sequences_used = 0;
};

/// Decides whether p0 is optimal by solving the game restricted to the
/// Gittins sequences against p0 under every tie ordering.
P0TestResult test_p0_optimality(const SearchGame& game, const P0TestOptions& options = {});

/// One line per iteration: iter,U,L,gap,added_seq,binding_mask.
std::string trace_csv(const Solution& solution);

}  // namespace hideseek
