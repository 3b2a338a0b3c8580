#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hideseek/game.hpp"

namespace hideseek {

/// p_i (1 - alpha_i)^{m_i} alpha_i / t_i.
double gittins_index(double p_i, double alpha_i, double t_i, long m_i);

/// Preference order used to break ties between maximal indices.
class TieOrdering {
 public:
  explicit TieOrdering(std::vector<BoxIndex> order);

  std::size_t size() const { return order_.size(); }
  std::span<const BoxIndex> order() const { return order_; }
  BoxIndex operator[](std::size_t k) const { return order_[k]; }
  /// Position of box i in the preference order (0 = most preferred).
  std::size_t rank(BoxIndex i) const { return rank_[i]; }

  static TieOrdering identity(std::size_t n);

  friend bool operator==(const TieOrdering& a, const TieOrdering& b) { return a.order_ == b.order_; }

 private:
  std::vector<BoxIndex> order_;
  std::vector<std::size_t> rank_;
};

/// The n cyclic rotations (1..n), (2..n,1), ..., (n,1..n-1).
std::vector<TieOrdering> initial_orderings(std::size_t n);

inline constexpr std::size_t kDefaultOrderingCap = 8;

/// All n! permutations in lexicographic order.
std::vector<TieOrdering> all_orderings(std::size_t n, std::size_t cap = kDefaultOrderingCap);

struct CycleInfo {
  std::size_t start = 0;              // position in `boxes` where the cycle begins
  std::vector<BoxIndex> pattern;      // repeated forever from `start`
  std::vector<std::size_t> entry;     // R_i: visits of box i before `start`
};

struct SequenceOptions {
  double tie_rel_tol = 1e-9;
  /// Follow the ordering for the first n searches (the all-tied start at p0).
  bool ordered_start = false;
  /// For cyclic games: watch for a window of x_hat searches with exactly x_i
  /// visits of each box, then repeat it.
  bool detect_cycle = false;
  std::size_t max_length = 20'000'000;
};

/// An infinite search sequence realized lazily. Each extension appends to the
/// cached prefix, so visit times are never regenerated.
class SearchSequence {
 public:
  /// Gittins sequence against p, breaking ties within tolerance by `order`.
  static SearchSequence gittins(const SearchGame& game, const HidingStrategy& p, const TieOrdering& order,
                                const SequenceOptions& options = {});
  /// prefix followed by `cycle` repeated forever.
  static SearchSequence periodic(const SearchGame& game, std::vector<BoxIndex> prefix,
                                 std::vector<BoxIndex> cycle);

  std::size_t box_count() const { return times_.size(); }
  std::size_t length() const { return boxes_.size(); }
  std::span<const BoxIndex> boxes() const { return boxes_; }
  BoxIndex operator[](std::size_t k) const { return boxes_[k]; }

  /// tau_i(r) for r = 1..visits: completion time of the r-th search of box i.
  std::span<const double> visit_times(BoxIndex i) const { return visits_[i]; }
  std::size_t visits(BoxIndex i) const { return visits_[i].size(); }
  double elapsed() const { return elapsed_; }

  const std::optional<CycleInfo>& cycle() const { return cycle_; }
  bool is_gittins() const { return std::holds_alternative<GittinsState>(gen_); }

  /// Total number of visits box i will ever receive when that is finite and
  /// known (p_i = 0, a perfect box already searched, or absent from the
  /// repeating pattern); nullopt otherwise.
  std::optional<std::size_t> visit_limit(BoxIndex i) const;
  /// True when the generating strategy had some p_i = 0.
  bool degenerate_support() const { return degenerate_support_; }

  /// Extends the realized prefix to at least `len` searches.
  void extend_to(std::size_t len);
  /// Extends until box i has at least `count` visits. Throws SequenceLimit when
  /// that cannot happen within the configured maximum length.
  void extend_until_visits(BoxIndex i, std::size_t count);

  /// Largest time between consecutive visits of any box in the repeating part
  /// of a periodic sequence; nullopt for generated sequences.
  std::optional<double> periodic_revisit_gap(BoxIndex i) const;

  /// First `len` boxes (extending as needed).
  std::vector<BoxIndex> prefix(std::size_t len);

 private:
  struct GittinsState {
    std::vector<double> log_base;   // log(p_i alpha_i / t_i), -inf when p_i = 0
    std::vector<double> log_decay;  // log(1 - alpha_i), -inf for perfect boxes
    std::vector<long> searched;
    TieOrdering order;
    SequenceOptions options;
    // Cycle watch (cyclic games only).
    std::vector<int> x;
    std::size_t x_hat = 0;
    std::vector<int> window_counts;
  };
  struct PeriodicState {
    std::vector<BoxIndex> prefix;
    std::vector<BoxIndex> pattern;
  };

  SearchSequence() = default;
  void push(BoxIndex b);
  BoxIndex next_gittins(GittinsState& s);
  BoxIndex next_periodic(const PeriodicState& s) const;
  void step();

  std::vector<double> times_;
  std::vector<BoxIndex> boxes_;
  std::vector<std::vector<double>> visits_;
  double elapsed_ = 0.0;
  std::optional<CycleInfo> cycle_;
  bool degenerate_support_ = false;
  std::size_t max_length_ = 20'000'000;
  std::variant<PeriodicState, GittinsState> gen_;
};

/// The first `horizon` searches of the Gittins sequence against p under `order`.
SearchSequence gittins_sequence(const SearchGame& game, const HidingStrategy& p, const TieOrdering& order,
                                std::size_t horizon, const SequenceOptions& options = {});

/// Gittins sequence against p0 under `order`; its first n searches follow the order.
SearchSequence p0_sequence(const SearchGame& game, const TieOrdering& order, std::size_t horizon = 0);

/// Cyclic-game sequence with its cycle marked. Against p0 it uses the exact
/// integer rule argmax x_i / r_i; otherwise it generates floating-point indices
/// until a window with exactly x_i visits of each box appears.
SearchSequence cyclic_sequence(const SearchGame& game, const HidingStrategy& p, const TieOrdering& order);

/// Replays a realized prefix and checks that every chosen box attained the
/// maximal index within relative tolerance. Indices are evaluated by direct
/// products, independently of the generator's log-space arithmetic.
bool is_gittins_prefix(const SearchGame& game, const HidingStrategy& p, std::span<const BoxIndex> boxes,
                       double rel_tol = 1e-9);

}  // namespace hideseek
