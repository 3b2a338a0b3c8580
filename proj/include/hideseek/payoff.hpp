#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hideseek/game.hpp"
#include "hideseek/gittins.hpp"

namespace hideseek {

/// Certified bracket lower <= u <= upper on an expected time to detection.
/// `unbounded` is the sentinel for a box that is searched only finitely often
/// (u = +infinity); lower and upper are then meaningless and left at 0.
struct PayoffBracket {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t searches_used = 0;  // truncation depth R
  bool unbounded = false;

  double midpoint() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

struct TailBoundParams {
  long l = 0;
  double l_hat = 0.0;  // longest time between successive visits of any box
};

inline constexpr double kDefaultPayoffRelTol = 1e-10;

/// l = floor(max_{i,j} log(1-alpha_i)/log(1-alpha_j)) + 1, l_hat = sum_j l t_j.
/// Throws PerfectDetectionUnsupported when some alpha_i = 1.
TailBoundParams tail_params(const SearchGame& game);

/// Revisit-time bound used inside the engine; unlike tail_params it accepts
/// perfect boxes, which a Gittins sequence searches at most once each.
double revisit_bound(const SearchGame& game);

struct TruncatedPayoff {
  double lower = 0.0;
  double upper = 0.0;
};

/// Partial series through R terms, plus the tail bound l_hat (1-alpha_i)^{R+1} / alpha_i.
/// Uses only the realized prefix; throws InsufficientPrefix when box i has
/// fewer than R+1 visits.
TruncatedPayoff payoff_truncated(const SearchGame& game, BoxIndex i, const SearchSequence& xi, std::size_t R);

/// Increases R (extending xi) until upper / lower - 1 < rel_tol.
PayoffBracket payoff(const SearchGame& game, BoxIndex i, SearchSequence& xi,
                     double rel_tol = kDefaultPayoffRelTol);

/// Closed form for a sequence whose cycle is known (cyclic games).
double payoff_cyclic(const SearchGame& game, BoxIndex i, SearchSequence& xi);

/// Payoff when box i is hidden in and the searcher repeats (1, ..., n).
double round_robin_payoff(const SearchGame& game, BoxIndex i);

/// All n payoffs of one sequence. Uses the cyclic closed form when xi has a
/// cycle and the game is cyclic, otherwise the truncated series.
std::vector<PayoffBracket> payoff_column(const SearchGame& game, SearchSequence& xi,
                                         double rel_tol = kDefaultPayoffRelTol);

/// sum_i p_i u(i, xi) with interval arithmetic; boxes with p_i = 0 contribute 0.
PayoffBracket expected_payoff(const SearchGame& game, const HidingStrategy& p, SearchSequence& xi,
                              double rel_tol = kDefaultPayoffRelTol);
PayoffBracket expected_payoff(const HidingStrategy& p, std::span<const PayoffBracket> column);

struct WeightedSequence {
  double weight = 0.0;
  SearchSequence* sequence = nullptr;
};

/// u(i, theta) for a finite mixture of sequences.
PayoffBracket mixed_payoff(const SearchGame& game, BoxIndex i, std::span<const WeightedSequence> theta,
                           double rel_tol = kDefaultPayoffRelTol);
/// u(p, theta).
PayoffBracket mixed_payoff(const SearchGame& game, const HidingStrategy& p, std::span<const WeightedSequence> theta,
                           double rel_tol = kDefaultPayoffRelTol);

struct McEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

/// Simulates per-visit Bernoulli(alpha_i) detection along xi.
McEstimate mc_estimate(const SearchGame& game, BoxIndex i, SearchSequence& xi, std::size_t trials,
                       std::uint64_t seed);

}  // namespace hideseek
