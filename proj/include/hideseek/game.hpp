#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hideseek/rng.hpp"

namespace hideseek {

using BoxIndex = std::size_t;  // 0-based inside the library, 1-based on the wire

/// Boxes for which (1 - alpha_i)^{x_i} is the same base c for all i.
struct CyclicStructure {
  std::vector<int> x;
  double c = 0.0;
  int x_hat = 0;       // searches per cycle
  double t_hat = 0.0;  // time per cycle
};

/// Raw, unvalidated game description as read from a file or the C API.
struct GameDescription {
  std::vector<double> t;
  std::vector<double> alpha;
  struct Cyclic {
    double c = 0.0;
    std::vector<int> x;
  };
  std::optional<Cyclic> cyclic;
  bool allow_perfect = false;
};

/// An n-box hide-and-search instance. Immutable once constructed.
class SearchGame {
 public:
  std::size_t size() const { return t_.size(); }
  double t(BoxIndex i) const { return t_[i]; }
  double alpha(BoxIndex i) const { return alpha_[i]; }
  std::span<const double> times() const { return t_; }
  std::span<const double> alphas() const { return alpha_; }
  const std::optional<CyclicStructure>& cyclic() const { return cyclic_; }
  bool is_cyclic() const { return cyclic_.has_value(); }
  bool allow_perfect() const { return allow_perfect_; }
  bool is_perfect(BoxIndex i) const { return alpha_[i] >= 1.0; }
  bool has_perfect_box() const;

  GameDescription describe() const;

 private:
  friend SearchGame validate_game(const GameDescription& raw);
  friend SearchGame make_cyclic_game(double c, std::vector<int> x, std::vector<double> t);

  std::vector<double> t_;
  std::vector<double> alpha_;
  std::optional<CyclicStructure> cyclic_;
  bool allow_perfect_ = false;
};

/// Validates a raw description. A declared cyclic structure without alpha
/// derives alpha from (c, x); with alpha it is checked for consistency.
SearchGame validate_game(const GameDescription& raw);

/// Builds a cyclic game with alpha_i = 1 - c^{1/x_i}.
SearchGame make_cyclic_game(double c, std::vector<int> x, std::vector<double> t);

/// Probability vector over boxes.
class HidingStrategy {
 public:
  HidingStrategy() = default;
  explicit HidingStrategy(std::vector<double> p);

  std::size_t size() const { return p_.size(); }
  double operator[](BoxIndex i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }
  bool full_support() const;

 private:
  std::vector<double> p_;
};

/// Heuristic strategy hiding in box i with probability proportional to t_i / alpha_i.
HidingStrategy p0(const SearchGame& game);

double future_benefit(const SearchGame& game, BoxIndex i);
double immediate_benefit(const SearchGame& game, BoxIndex i);

struct SampleScheme {
  std::string name;
  double alpha_low = 0.0;
  double alpha_high = 0.0;
  double t_low = 1.0;
  double t_high = 5.0;

  static SampleScheme varied() { return {"varied", 0.1, 0.9}; }
  static SampleScheme low() { return {"low", 0.1, 0.5}; }
  static SampleScheme medium() { return {"medium", 0.3, 0.7}; }
  static SampleScheme high() { return {"high", 0.5, 0.9}; }
  static SampleScheme by_name(std::string_view name);
};

/// Draws alpha_i ~ U(alpha_low, alpha_high) and t_i ~ U(t_low, t_high).
SearchGame sample_game(const SampleScheme& scheme, std::size_t n, Rng rng);
SearchGame sample_game(const SampleScheme& scheme, std::size_t n, std::uint64_t seed);

}  // namespace hideseek
