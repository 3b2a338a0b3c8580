#include "hideseek/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hideseek/error.hpp"
#include "hideseek/rng.hpp"

namespace hideseek {

namespace {

// floor() applied to a ratio that is an integer in exact arithmetic (cyclic
// games) must not land one below it.
long floor_plus_one(double ratio) { return static_cast<long>(std::floor(ratio * (1.0 + 1e-12))) + 1; }

long max_log_ratio_l(const SearchGame& game) {
  double worst = 1.0;
  for (std::size_t i = 0; i < game.size(); ++i) {
    if (game.is_perfect(i)) continue;
    for (std::size_t j = 0; j < game.size(); ++j) {
      if (game.is_perfect(j)) continue;
      worst = std::max(worst, std::log1p(-game.alpha(i)) / std::log1p(-game.alpha(j)));
    }
  }
  return floor_plus_one(worst);
}

double tail_gap(const SearchGame& game, const SearchSequence& xi, BoxIndex i) {
  double gap = revisit_bound(game);
  if (const auto g = xi.periodic_revisit_gap(i)) gap = std::max(gap, *g);
  return gap;
}

PayoffBracket exact(double value) {
  PayoffBracket b;
  b.lower = value;
  b.upper = value;
  return b;
}

PayoffBracket unbounded_bracket() {
  PayoffBracket b;
  b.unbounded = true;
  return b;
}

}  // namespace

TailBoundParams tail_params(const SearchGame& game) {
  if (game.has_perfect_box()) {
    throw Error(ErrorCode::PerfectDetectionUnsupported, "log-ratio bound is undefined when some alpha_i = 1");
  }
  TailBoundParams params;
  params.l = max_log_ratio_l(game);
  double total = 0.0;
  for (double t : game.times()) total += t;
  params.l_hat = static_cast<double>(params.l) * total;
  return params;
}

double revisit_bound(const SearchGame& game) {
  const long l = max_log_ratio_l(game);
  double bound = 0.0;
  for (std::size_t j = 0; j < game.size(); ++j) {
    bound += game.is_perfect(j) ? game.t(j) : static_cast<double>(l) * game.t(j);
  }
  return bound;
}

TruncatedPayoff payoff_truncated(const SearchGame& game, BoxIndex i, const SearchSequence& xi, std::size_t R) {
  const auto tau = xi.visit_times(i);
  if (tau.size() < R + 1) {
    throw Error(ErrorCode::InsufficientPrefix, "box " + std::to_string(i + 1) + " has " +
                                                   std::to_string(tau.size()) + " realized visits, need " +
                                                   std::to_string(R + 1));
  }
  const double q = 1.0 - game.alpha(i);
  double lower = tau[0];
  double qpow = q;
  for (std::size_t r = 1; r <= R; ++r) {
    lower += qpow * (tau[r] - tau[r - 1]);
    qpow *= q;
  }
  return {lower, lower + tail_gap(game, xi, i) * qpow / game.alpha(i)};
}

PayoffBracket payoff(const SearchGame& game, BoxIndex i, SearchSequence& xi, double rel_tol) {
  const auto limit = xi.visit_limit(i);
  if (game.is_perfect(i)) {
    if (limit && *limit == 0) return unbounded_bracket();
    xi.extend_until_visits(i, 1);
    return exact(xi.visit_times(i)[0]);
  }
  if (limit) return unbounded_bracket();

  const double q = 1.0 - game.alpha(i);
  const double alpha = game.alpha(i);
  const double generic_gap = revisit_bound(game);

  xi.extend_until_visits(i, 1);
  double lower = xi.visit_times(i)[0];
  double qpow = q;  // (1 - alpha)^{R+1}
  std::size_t R = 0;
  for (;;) {
    // Once the visits past R lie inside a known cycle, the exact revisit gap applies.
    double gap = generic_gap;
    bool usable = true;
    if (const auto& cyc = xi.cycle()) {
      if (const auto g = xi.periodic_revisit_gap(i)) {
        gap = *g;
        usable = R >= cyc->entry[i];
      }
    }
    const double tail = gap * qpow / alpha;
    if (usable && tail < rel_tol * lower) {
      PayoffBracket b;
      b.lower = lower;
      b.upper = lower + tail;
      b.searches_used = R;
      return b;
    }
    ++R;
    xi.extend_until_visits(i, R + 1);
    const auto tau = xi.visit_times(i);
    lower += qpow * (tau[R] - tau[R - 1]);
    qpow *= q;
  }
}

double payoff_cyclic(const SearchGame& game, BoxIndex i, SearchSequence& xi) {
  if (!xi.cycle()) throw Error(ErrorCode::NoCycleDetected, "sequence has no detected cycle");
  const CycleInfo& cyc = *xi.cycle();
  const std::size_t k = static_cast<std::size_t>(std::count(cyc.pattern.begin(), cyc.pattern.end(), i));
  const std::size_t R = cyc.entry[i];
  if (k == 0) {
    if (game.is_perfect(i) && R > 0) {
      xi.extend_until_visits(i, 1);
      return xi.visit_times(i)[0];
    }
    return std::numeric_limits<double>::infinity();
  }
  xi.extend_until_visits(i, R + k + 1);
  const auto tau = xi.visit_times(i);
  const double q = 1.0 - game.alpha(i);
  if (q == 0.0) return tau[0];

  double u_R = 0.0;
  double qpow = q;
  for (std::size_t r = 1; r <= R; ++r) {
    u_R += qpow * (tau[r] - tau[r - 1]);
    qpow *= q;
  }
  const double q_R = qpow / q;  // (1 - alpha)^R
  double A = 0.0;
  double qr = q;
  for (std::size_t r = 1; r <= k; ++r) {
    A += qr * (tau[R + r] - tau[R + r - 1]);
    qr *= q;
  }
  const double q_k = qr / q;  // (1 - alpha)^k
  return tau[0] + u_R + q_R * A / (1.0 - q_k);
}

double round_robin_payoff(const SearchGame& game, BoxIndex i) {
  double prefix = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < game.size(); ++j) {
    total += game.t(j);
    if (j <= i) prefix += game.t(j);
  }
  return prefix + (1.0 - game.alpha(i)) / game.alpha(i) * total;
}

std::vector<PayoffBracket> payoff_column(const SearchGame& game, SearchSequence& xi, double rel_tol) {
  std::vector<PayoffBracket> col(game.size());
  const bool closed_form = xi.cycle().has_value();
  for (std::size_t i = 0; i < game.size(); ++i) {
    if (closed_form) {
      const double u = payoff_cyclic(game, i, xi);
      col[i] = std::isfinite(u) ? exact(u) : unbounded_bracket();
    } else {
      col[i] = payoff(game, i, xi, rel_tol);
    }
  }
  return col;
}

PayoffBracket expected_payoff(const HidingStrategy& p, std::span<const PayoffBracket> column) {
  PayoffBracket out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (column[i].unbounded) return unbounded_bracket();
    out.lower += p[i] * column[i].lower;
    out.upper += p[i] * column[i].upper;
    out.searches_used = std::max(out.searches_used, column[i].searches_used);
  }
  return out;
}

PayoffBracket expected_payoff(const SearchGame& game, const HidingStrategy& p, SearchSequence& xi, double rel_tol) {
  if (p.size() != game.size()) throw Error(ErrorCode::InvalidArgument, "strategy size mismatch");
  std::vector<PayoffBracket> col(game.size());
  for (std::size_t i = 0; i < game.size(); ++i) {
    if (p[i] > 0.0) col[i] = payoff(game, i, xi, rel_tol);
  }
  return expected_payoff(p, col);
}

namespace {

void check_mixture(std::span<const WeightedSequence> theta) {
  if (theta.empty()) throw Error(ErrorCode::InvalidArgument, "empty searcher mixture");
  double sum = 0.0;
  for (const auto& w : theta) {
    if (!(w.weight >= 0.0) || w.sequence == nullptr) {
      throw Error(ErrorCode::InvalidArgument, "mixture weights must be >= 0 with a sequence attached");
    }
    sum += w.weight;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "mixture weights must sum to 1");
}

PayoffBracket accumulate(PayoffBracket acc, double w, const PayoffBracket& b) {
  if (w == 0.0) return acc;
  if (b.unbounded) return unbounded_bracket();
  acc.lower += w * b.lower;
  acc.upper += w * b.upper;
  acc.searches_used = std::max(acc.searches_used, b.searches_used);
  return acc;
}

}  // namespace

PayoffBracket mixed_payoff(const SearchGame& game, BoxIndex i, std::span<const WeightedSequence> theta,
                           double rel_tol) {
  check_mixture(theta);
  PayoffBracket acc;
  for (const auto& w : theta) {
    if (w.weight == 0.0) continue;
    acc = accumulate(acc, w.weight, payoff(game, i, *w.sequence, rel_tol));
    if (acc.unbounded) return acc;
  }
  return acc;
}

PayoffBracket mixed_payoff(const SearchGame& game, const HidingStrategy& p, std::span<const WeightedSequence> theta,
                           double rel_tol) {
  check_mixture(theta);
  PayoffBracket acc;
  for (const auto& w : theta) {
    if (w.weight == 0.0) continue;
    acc = accumulate(acc, w.weight, expected_payoff(game, p, *w.sequence, rel_tol));
    if (acc.unbounded) return acc;
  }
  return acc;
}

McEstimate mc_estimate(const SearchGame& game, BoxIndex i, SearchSequence& xi, std::size_t trials,
                       std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "mc_estimate needs at least one trial");
  if (const auto limit = xi.visit_limit(i); limit && !(game.is_perfect(i) && *limit > 0)) {
    throw Error(ErrorCode::InvalidArgument, "box " + std::to_string(i + 1) + " is searched finitely often");
  }
  Rng rng(seed);
  const double alpha = game.alpha(i);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 1; k <= trials; ++k) {
    std::size_t visit = 0;
    for (;;) {
      ++visit;
      xi.extend_until_visits(i, visit);
      if (rng.bernoulli(alpha)) break;
    }
    const double x = xi.visit_times(i)[visit - 1];
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  McEstimate est;
  est.mean = mean;
  est.trials = trials;
  if (trials > 1) {
    const double var = m2 / static_cast<double>(trials - 1);
    est.std_error = std::sqrt(var / static_cast<double>(trials));
    est.half_width_95 = 1.959963984540054 * est.std_error;
  }
  return est;
}

}  // namespace hideseek
