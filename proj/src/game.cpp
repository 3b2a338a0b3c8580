#include "hideseek/game.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "hideseek/error.hpp"

namespace hideseek {

namespace {

constexpr double kCyclicRelTol = 1e-12;
constexpr double kStrategySumTol = 1e-12;

void check_times(const std::vector<double>& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !std::isfinite(t[i])) {
      throw Error(ErrorCode::NonPositiveTime,
                  "t[" + std::to_string(i + 1) + "] = " + std::to_string(t[i]) + " must be > 0");
    }
  }
}

int gcd_of(const std::vector<int>& x) {
  int g = 0;
  for (int v : x) g = std::gcd(g, v);
  return g;
}

CyclicStructure build_cyclic(double c, const std::vector<int>& x, const std::vector<double>& t) {
  if (!(c > 0.0 && c < 1.0)) {
    throw Error(ErrorCode::BaseOutOfRange, "cyclic base c = " + std::to_string(c) + " must lie in (0,1)");
  }
  if (x.size() != t.size()) {
    throw Error(ErrorCode::InvalidArgument, "cyclic exponents x must have one entry per box");
  }
  for (int v : x) {
    if (v < 1) throw Error(ErrorCode::InvalidArgument, "cyclic exponents must be positive integers");
  }
  if (gcd_of(x) != 1) {
    throw Error(ErrorCode::NotCoprime, "gcd of cyclic exponents is " + std::to_string(gcd_of(x)));
  }
  CyclicStructure cs;
  cs.x = x;
  cs.c = c;
  cs.x_hat = std::accumulate(x.begin(), x.end(), 0);
  cs.t_hat = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) cs.t_hat += x[i] * t[i];
  return cs;
}

}  // namespace

bool SearchGame::has_perfect_box() const {
  for (double a : alpha_) {
    if (a >= 1.0) return true;
  }
  return false;
}

GameDescription SearchGame::describe() const {
  GameDescription d;
  d.t = t_;
  d.alpha = alpha_;
  d.allow_perfect = allow_perfect_;
  if (cyclic_) d.cyclic = GameDescription::Cyclic{cyclic_->c, cyclic_->x};
  return d;
}

SearchGame validate_game(const GameDescription& raw) {
  if (raw.t.empty()) throw Error(ErrorCode::EmptyGame, "a game needs at least one box");
  if (raw.alpha.empty() && raw.cyclic) {
    SearchGame g = make_cyclic_game(raw.cyclic->c, raw.cyclic->x, raw.t);
    g.allow_perfect_ = raw.allow_perfect;
    return g;
  }
  if (raw.alpha.size() != raw.t.size()) {
    throw Error(ErrorCode::InvalidArgument, "t and alpha must have the same length");
  }
  check_times(raw.t);
  for (std::size_t i = 0; i < raw.alpha.size(); ++i) {
    const double a = raw.alpha[i];
    const bool ok = (a > 0.0 && a < 1.0) || (a == 1.0 && raw.allow_perfect);
    if (!ok) {
      throw Error(ErrorCode::ProbabilityOutOfRange,
                  "alpha[" + std::to_string(i + 1) + "] = " + std::to_string(a) +
                      (a == 1.0 ? " requires allow_perfect" : " must lie in (0,1)"));
    }
  }

  SearchGame g;
  g.t_ = raw.t;
  g.alpha_ = raw.alpha;
  g.allow_perfect_ = raw.allow_perfect;
  if (raw.cyclic) {
    CyclicStructure cs = build_cyclic(raw.cyclic->c, raw.cyclic->x, raw.t);
    for (std::size_t i = 0; i < raw.alpha.size(); ++i) {
      const double base = std::pow(1.0 - raw.alpha[i], cs.x[i]);
      if (std::abs(base - cs.c) > kCyclicRelTol * cs.c) {
        throw Error(ErrorCode::CyclicInconsistent,
                    "(1 - alpha[" + std::to_string(i + 1) + "])^" + std::to_string(cs.x[i]) + " = " +
                        std::to_string(base) + " differs from c = " + std::to_string(cs.c));
      }
    }
    g.cyclic_ = std::move(cs);
  }
  return g;
}

SearchGame make_cyclic_game(double c, std::vector<int> x, std::vector<double> t) {
  if (t.empty()) throw Error(ErrorCode::EmptyGame, "a game needs at least one box");
  check_times(t);
  CyclicStructure cs = build_cyclic(c, x, t);
  SearchGame g;
  g.alpha_.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    g.alpha_[i] = x[i] == 1 ? 1.0 - c : 1.0 - std::pow(c, 1.0 / x[i]);
  }
  g.t_ = std::move(t);
  g.cyclic_ = std::move(cs);
  return g;
}

HidingStrategy::HidingStrategy(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw Error(ErrorCode::InvalidStrategy, "empty hiding strategy");
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidStrategy, "hiding probabilities must be finite and >= 0");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kStrategySumTol) {
    throw Error(ErrorCode::InvalidStrategy, "hiding probabilities sum to " + std::to_string(sum));
  }
}

bool HidingStrategy::full_support() const {
  for (double v : p_) {
    if (v <= 0.0) return false;
  }
  return true;
}

HidingStrategy p0(const SearchGame& game) {
  std::vector<double> w(game.size());
  double total = 0.0;
  for (std::size_t i = 0; i < game.size(); ++i) {
    w[i] = game.t(i) / game.alpha(i);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return HidingStrategy(std::move(w));
}

double future_benefit(const SearchGame& game, BoxIndex i) {
  if (game.is_perfect(i)) return std::numeric_limits<double>::infinity();
  return -std::log1p(-game.alpha(i)) / game.t(i);
}

double immediate_benefit(const SearchGame& game, BoxIndex i) { return game.alpha(i) / game.t(i); }

SampleScheme SampleScheme::by_name(std::string_view name) {
  if (name == "varied") return varied();
  if (name == "low") return low();
  if (name == "medium") return medium();
  if (name == "high") return high();
  throw Error(ErrorCode::InvalidArgument, "unknown sample scheme '" + std::string(name) + "'");
}

SearchGame sample_game(const SampleScheme& scheme, std::size_t n, Rng rng) {
  if (n == 0) throw Error(ErrorCode::EmptyGame, "a game needs at least one box");
  if (!(scheme.alpha_low > 0.0 && scheme.alpha_low < scheme.alpha_high && scheme.alpha_high < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "sample scheme needs 0 < alpha_low < alpha_high < 1");
  }
  GameDescription d;
  d.t.resize(n);
  d.alpha.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.alpha[i] = rng.uniform(scheme.alpha_low, scheme.alpha_high);
    d.t[i] = rng.uniform(scheme.t_low, scheme.t_high);
  }
  return validate_game(d);
}

SearchGame sample_game(const SampleScheme& scheme, std::size_t n, std::uint64_t seed) {
  return sample_game(scheme, n, Rng(seed));
}

}  // namespace hideseek
