#pragma once

#include <vector>

#include "hideseek/game.hpp"

namespace hideseek {

struct ValueBounds {
  double lower = 0.0;  // max_i t_i / alpha_i
  double upper = 0.0;  // mobile-hider value sum_i t_i / alpha_i
};

ValueBounds value_bounds(const SearchGame& game);

/// Lower bounds on every optimal hiding probability and the shrunken floors
/// that define the truncated simplex searched by the solver.
struct HiderFloor {
  double M = 0.0;
  std::vector<long> m;        // floor(M / t_i) + 1
  std::vector<double> c;      // sum_{j != i} t_j / (alpha_j (1 - alpha_j)^{m_j - 1})
  std::vector<double> eta;    // (t_i/alpha_i) / (t_i/alpha_i + c_i)
  std::vector<double> delta;  // shrink * eta_i
  double shrink = 0.99;
  /// Set when some eta_i underflowed and `absolute_floor` was used instead.
  /// Optimal strategies are then only guaranteed to satisfy p_i >= eta_i for
  /// the remaining boxes.
  bool underflow = false;
};

struct FloorOptions {
  double shrink = 0.99;
  /// Replacement for an eta_i that underflows double precision; 0 means
  /// underflow is an error.
  double absolute_floor = 0.0;
};

HiderFloor hider_floor(const SearchGame& game, const FloorOptions& options = {});

}  // namespace hideseek
