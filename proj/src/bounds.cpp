#include "hideseek/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hideseek/error.hpp"

namespace hideseek {

ValueBounds value_bounds(const SearchGame& game) {
  ValueBounds b;
  for (std::size_t i = 0; i < game.size(); ++i) {
    const double r = game.t(i) / game.alpha(i);
    b.lower = std::max(b.lower, r);
    b.upper += r;
  }
  return b;
}

HiderFloor hider_floor(const SearchGame& game, const FloorOptions& options) {
  if (!(options.shrink > 0.0 && options.shrink < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "shrink factor must lie in (0,1)");
  }
  const std::size_t n = game.size();
  if (n >= 2 && game.has_perfect_box()) {
    throw Error(ErrorCode::PerfectDetectionUnsupported, "hider floors need alpha_j < 1 for every box");
  }

  HiderFloor f;
  f.shrink = options.shrink;
  f.M = value_bounds(game).upper;
  f.m.resize(n);
  f.c.assign(n, 0.0);
  f.eta.resize(n);
  f.delta.resize(n);

  // log of t_j / (alpha_j (1 - alpha_j)^{m_j - 1}); the power is taken in log
  // space so that it cannot underflow to zero.
  std::vector<double> log_term(n);
  for (std::size_t j = 0; j < n; ++j) {
    f.m[j] = static_cast<long>(std::floor(f.M / game.t(j))) + 1;
    const double log_decay = game.is_perfect(j) ? 0.0 : std::log1p(-game.alpha(j));
    log_term[j] = std::log(game.t(j)) - std::log(game.alpha(j)) - static_cast<double>(f.m[j] - 1) * log_decay;
  }

  for (std::size_t i = 0; i < n; ++i) {
    // log c_i by log-sum-exp over j != i.
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) top = std::max(top, log_term[j]);
    }
    double log_c = top;
    if (std::isfinite(top)) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) s += std::exp(log_term[j] - top);
      }
      log_c = top + std::log(s);
    }
    f.c[i] = std::exp(log_c);  // may overflow to +inf; eta is computed from log_c

    const double log_a = std::log(game.t(i)) - std::log(game.alpha(i));
    // eta_i = 1 / (1 + c_i / a_i)
    double log_eta = 0.0;
    if (std::isfinite(log_c)) {
      const double d = log_c - log_a;
      log_eta = d > 0 ? -(d + std::log1p(std::exp(-d))) : -std::log1p(std::exp(d));
    }
    double eta = std::exp(log_eta);
    if (!(eta >= std::numeric_limits<double>::min())) {
      if (options.absolute_floor <= 0.0) {
        throw Error(ErrorCode::FloorUnderflow, "hider floor for box " + std::to_string(i + 1) +
                                                   " underflows (log eta = " + std::to_string(log_eta) + ")");
      }
      eta = options.absolute_floor / options.shrink;
      f.underflow = true;
    }
    f.eta[i] = eta;
    f.delta[i] = options.shrink * eta;
  }

  double total = 0.0;
  for (double d : f.delta) total += d;
  if (!(total < 1.0)) {
    throw Error(ErrorCode::DegenerateFloors, "floors sum to " + std::to_string(total) + " >= 1");
  }
  return f;
}

}  // namespace hideseek
