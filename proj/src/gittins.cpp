#include "hideseek/gittins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hideseek/error.hpp"

namespace hideseek {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_p0(const SearchGame& game, const HidingStrategy& p) {
  const HidingStrategy ref = p0(game);
  for (std::size_t i = 0; i < game.size(); ++i) {
    if (std::abs(p[i] - ref[i]) > 1e-12 * ref[i]) return false;
  }
  return true;
}

void check_sizes(const SearchGame& game, const HidingStrategy& p, const TieOrdering& order) {
  if (p.size() != game.size() || order.size() != game.size()) {
    throw Error(ErrorCode::InvalidArgument, "strategy and ordering must have one entry per box");
  }
}

}  // namespace

double gittins_index(double p_i, double alpha_i, double t_i, long m_i) {
  if (p_i == 0.0) return 0.0;
  double decay = 1.0;
  const double q = 1.0 - alpha_i;
  for (long k = 0; k < m_i; ++k) decay *= q;
  return p_i * decay * alpha_i / t_i;
}

TieOrdering::TieOrdering(std::vector<BoxIndex> order) : order_(std::move(order)), rank_(order_.size()) {
  std::vector<bool> seen(order_.size(), false);
  for (std::size_t k = 0; k < order_.size(); ++k) {
    const BoxIndex b = order_[k];
    if (b >= order_.size() || seen[b]) {
      throw Error(ErrorCode::InvalidOrdering, "tie ordering must be a permutation of the boxes");
    }
    seen[b] = true;
    rank_[b] = k;
  }
}

TieOrdering TieOrdering::identity(std::size_t n) {
  std::vector<BoxIndex> order(n);
  std::iota(order.begin(), order.end(), BoxIndex{0});
  return TieOrdering(std::move(order));
}

std::vector<TieOrdering> initial_orderings(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::EmptyGame, "no boxes to order");
  std::vector<TieOrdering> out;
  out.reserve(n);
  for (std::size_t shift = 0; shift < n; ++shift) {
    std::vector<BoxIndex> order(n);
    for (std::size_t k = 0; k < n; ++k) order[k] = (shift + k) % n;
    out.emplace_back(std::move(order));
  }
  return out;
}

std::vector<TieOrdering> all_orderings(std::size_t n, std::size_t cap) {
  if (n == 0) throw Error(ErrorCode::EmptyGame, "no boxes to order");
  if (n > cap) {
    throw Error(ErrorCode::CapExceeded,
                std::to_string(n) + "! orderings exceed the cap of " + std::to_string(cap) + " boxes");
  }
  std::vector<BoxIndex> order(n);
  std::iota(order.begin(), order.end(), BoxIndex{0});
  std::vector<TieOrdering> out;
  do {
    out.emplace_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// ---------------------------------------------------------------------------
// SearchSequence

SearchSequence SearchSequence::gittins(const SearchGame& game, const HidingStrategy& p, const TieOrdering& order,
                                       const SequenceOptions& options) {
  check_sizes(game, p, order);
  const std::size_t n = game.size();
  SearchSequence seq;
  seq.times_.assign(game.times().begin(), game.times().end());
  seq.visits_.resize(n);
  seq.max_length_ = options.max_length;

  GittinsState s{.log_base = std::vector<double>(n),
                 .log_decay = std::vector<double>(n),
                 .searched = std::vector<long>(n, 0),
                 .order = order,
                 .options = options,
                 .x = {},
                 .x_hat = 0,
                 .window_counts = {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] > 0.0) {
      s.log_base[i] = std::log(p[i]) + std::log(game.alpha(i)) - std::log(game.t(i));
    } else {
      s.log_base[i] = kNegInf;
      seq.degenerate_support_ = true;
    }
    s.log_decay[i] = game.is_perfect(i) ? kNegInf : std::log1p(-game.alpha(i));
  }
  if (options.detect_cycle) {
    if (!game.is_cyclic()) throw Error(ErrorCode::NotCyclic, "cycle detection needs a cyclic game");
    s.x = game.cyclic()->x;
    s.x_hat = static_cast<std::size_t>(game.cyclic()->x_hat);
    s.window_counts.assign(n, 0);
  }
  seq.gen_ = std::move(s);
  return seq;
}

SearchSequence SearchSequence::periodic(const SearchGame& game, std::vector<BoxIndex> prefix,
                                        std::vector<BoxIndex> cycle) {
  const std::size_t n = game.size();
  if (cycle.empty()) throw Error(ErrorCode::InvalidArgument, "periodic sequence needs a nonempty cycle");
  for (BoxIndex b : prefix) {
    if (b >= n) throw Error(ErrorCode::InvalidArgument, "box index out of range");
  }
  for (BoxIndex b : cycle) {
    if (b >= n) throw Error(ErrorCode::InvalidArgument, "box index out of range");
  }
  SearchSequence seq;
  seq.times_.assign(game.times().begin(), game.times().end());
  seq.visits_.resize(n);
  CycleInfo info;
  info.start = prefix.size();
  info.pattern = cycle;
  info.entry.assign(n, 0);
  for (BoxIndex b : prefix) ++info.entry[b];
  seq.cycle_ = std::move(info);
  seq.gen_ = PeriodicState{std::move(prefix), std::move(cycle)};
  return seq;
}

std::optional<std::size_t> SearchSequence::visit_limit(BoxIndex i) const {
  if (const auto* g = std::get_if<GittinsState>(&gen_)) {
    if (g->log_base[i] == kNegInf) return visits_[i].size();
    if (g->log_decay[i] == kNegInf && !visits_[i].empty()) return visits_[i].size();
    return std::nullopt;
  }
  const auto& ps = std::get<PeriodicState>(gen_);
  if (std::find(ps.pattern.begin(), ps.pattern.end(), i) != ps.pattern.end()) return std::nullopt;
  return static_cast<std::size_t>(std::count(ps.prefix.begin(), ps.prefix.end(), i));
}

void SearchSequence::push(BoxIndex b) {
  boxes_.push_back(b);
  elapsed_ += times_[b];
  visits_[b].push_back(elapsed_);
}

BoxIndex SearchSequence::next_gittins(GittinsState& s) {
  const std::size_t n = times_.size();
  const std::size_t k = boxes_.size();
  if (s.options.ordered_start && k < n) return s.order[k];

  double best = kNegInf;
  std::vector<double> level(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.log_base[i] == kNegInf) {
      level[i] = kNegInf;
    } else {
      level[i] = s.searched[i] == 0 ? s.log_base[i] : s.log_base[i] + s.searched[i] * s.log_decay[i];
    }
    best = std::max(best, level[i]);
  }
  // Relative tolerance on the index is an absolute one on its logarithm.
  const double cutoff = best == kNegInf ? kNegInf : best + std::log1p(-s.options.tie_rel_tol);
  BoxIndex chosen = s.order[0];
  std::size_t chosen_rank = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < n; ++i) {
    if (level[i] >= cutoff && s.order.rank(i) < chosen_rank) {
      chosen = i;
      chosen_rank = s.order.rank(i);
    }
  }
  return chosen;
}

BoxIndex SearchSequence::next_periodic(const PeriodicState& s) const {
  const std::size_t k = boxes_.size();
  if (k < s.prefix.size()) return s.prefix[k];
  return s.pattern[(k - s.prefix.size()) % s.pattern.size()];
}

void SearchSequence::step() {
  if (auto* g = std::get_if<GittinsState>(&gen_)) {
    const BoxIndex b = next_gittins(*g);
    ++g->searched[b];
    push(b);
    if (g->options.detect_cycle) {
      ++g->window_counts[b];
      if (boxes_.size() > g->x_hat) --g->window_counts[boxes_[boxes_.size() - 1 - g->x_hat]];
      if (boxes_.size() >= g->x_hat) {
        bool match = true;
        for (std::size_t i = 0; i < g->x.size() && match; ++i) match = g->window_counts[i] == g->x[i];
        if (match) {
          const std::size_t start = boxes_.size() - g->x_hat;
          CycleInfo info;
          info.start = start;
          info.pattern.assign(boxes_.begin() + static_cast<std::ptrdiff_t>(start), boxes_.end());
          info.entry.resize(times_.size());
          for (std::size_t i = 0; i < times_.size(); ++i) info.entry[i] = visits_[i].size() - g->x[i];
          std::vector<BoxIndex> prefix(boxes_.begin(), boxes_.begin() + static_cast<std::ptrdiff_t>(start));
          std::vector<BoxIndex> pattern = info.pattern;
          cycle_ = std::move(info);
          gen_ = PeriodicState{std::move(prefix), std::move(pattern)};
        }
      }
    }
  } else {
    push(next_periodic(std::get<PeriodicState>(gen_)));
  }
}

void SearchSequence::extend_to(std::size_t len) {
  if (len > max_length_) {
    throw Error(ErrorCode::SequenceLimit, "requested " + std::to_string(len) + " searches, limit is " +
                                              std::to_string(max_length_));
  }
  boxes_.reserve(len);
  while (boxes_.size() < len) step();
}

void SearchSequence::extend_until_visits(BoxIndex i, std::size_t count) {
  if (visits_[i].size() >= count) return;
  if (const auto limit = visit_limit(i); limit && *limit < count) {
    throw Error(ErrorCode::InsufficientPrefix, "box " + std::to_string(i + 1) + " is visited only " +
                                                   std::to_string(*limit) + " times");
  }
  while (visits_[i].size() < count) {
    if (boxes_.size() >= max_length_) {
      throw Error(ErrorCode::SequenceLimit,
                  "box " + std::to_string(i + 1) + " needs more than " + std::to_string(max_length_) + " searches");
    }
    step();
  }
}

std::optional<double> SearchSequence::periodic_revisit_gap(BoxIndex i) const {
  const auto* ps = std::get_if<PeriodicState>(&gen_);
  if (!ps) return std::nullopt;
  const auto& pat = ps->pattern;
  std::vector<std::size_t> hits;
  for (std::size_t k = 0; k < pat.size(); ++k) {
    if (pat[k] == i) hits.push_back(k);
  }
  if (hits.empty()) return std::nullopt;
  double cycle_time = 0.0;
  for (BoxIndex b : pat) cycle_time += times_[b];
  double gap = 0.0;
  for (std::size_t h = 0; h < hits.size(); ++h) {
    // Time from completing visit h to completing the next visit of box i.
    const std::size_t from = hits[h];
    const std::size_t to = h + 1 < hits.size() ? hits[h + 1] : hits[0] + pat.size();
    double d = 0.0;
    for (std::size_t k = from + 1; k <= to; ++k) d += times_[pat[k % pat.size()]];
    gap = std::max(gap, d);
  }
  if (hits.size() == 1) gap = cycle_time;
  return gap;
}

std::vector<BoxIndex> SearchSequence::prefix(std::size_t len) {
  extend_to(len);
  return {boxes_.begin(), boxes_.begin() + static_cast<std::ptrdiff_t>(len)};
}

// ---------------------------------------------------------------------------

SearchSequence gittins_sequence(const SearchGame& game, const HidingStrategy& p, const TieOrdering& order,
                                std::size_t horizon, const SequenceOptions& options) {
  SearchSequence seq = SearchSequence::gittins(game, p, order, options);
  seq.extend_to(horizon);
  return seq;
}

SearchSequence p0_sequence(const SearchGame& game, const TieOrdering& order, std::size_t horizon) {
  if (game.is_cyclic()) {
    SearchSequence seq = cyclic_sequence(game, p0(game), order);
    seq.extend_to(horizon);
    return seq;
  }
  SequenceOptions opts;
  opts.ordered_start = true;
  return gittins_sequence(game, p0(game), order, horizon, opts);
}

SearchSequence cyclic_sequence(const SearchGame& game, const HidingStrategy& p, const TieOrdering& order) {
  if (!game.is_cyclic()) throw Error(ErrorCode::NotCyclic, "game has no cyclic structure");
  check_sizes(game, p, order);
  const auto& cs = *game.cyclic();
  const std::size_t n = game.size();

  if (is_p0(game, p)) {
    // Indices are proportional to c^{r_i / x_i}: maximize x_i / r_i exactly.
    std::vector<long> r(n, 0);
    std::vector<BoxIndex> pattern;
    pattern.reserve(static_cast<std::size_t>(cs.x_hat));
    for (int step = 0; step < cs.x_hat; ++step) {
      std::optional<BoxIndex> best;
      for (std::size_t k = 0; k < n; ++k) {
        const BoxIndex i = order[k];
        if (!best) {
          best = i;
          continue;
        }
        const BoxIndex j = *best;
        // x_i / r_i > x_j / r_j with 0 read as +infinity; earlier in order wins ties.
        bool better;
        if (r[i] == 0) {
          better = r[j] != 0;
        } else if (r[j] == 0) {
          better = false;
        } else {
          better = static_cast<long>(cs.x[i]) * r[j] > static_cast<long>(cs.x[j]) * r[i];
        }
        if (better) best = i;
      }
      ++r[*best];
      pattern.push_back(*best);
    }
    return SearchSequence::periodic(game, {}, std::move(pattern));
  }

  SequenceOptions opts;
  opts.detect_cycle = true;
  SearchSequence seq = SearchSequence::gittins(game, p, order, opts);
  const std::size_t limit = std::max<std::size_t>(1'000'000, 1000 * static_cast<std::size_t>(cs.x_hat));
  while (!seq.cycle()) {
    if (seq.length() >= limit) {
      throw Error(ErrorCode::NoCycleDetected, "no cycle within " + std::to_string(limit) + " searches");
    }
    seq.extend_to(seq.length() + 1);
  }
  return seq;
}

bool is_gittins_prefix(const SearchGame& game, const HidingStrategy& p, std::span<const BoxIndex> boxes,
                       double rel_tol) {
  const std::size_t n = game.size();
  std::vector<long> m(n, 0);
  for (BoxIndex b : boxes) {
    if (b >= n) return false;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, gittins_index(p[i], game.alpha(i), game.t(i), m[i]));
    const double chosen = gittins_index(p[b], game.alpha(b), game.t(b), m[b]);
    if (chosen < best * (1.0 - rel_tol)) return false;
    ++m[b];
  }
  return true;
}

}  // namespace hideseek
