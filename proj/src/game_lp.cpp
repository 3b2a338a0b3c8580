#include "hideseek/game_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hideseek/error.hpp"

namespace hideseek {

void PayoffMatrix::add_column(std::span<const double> column, std::size_t id) {
  if (column.size() != rows_) throw Error(ErrorCode::InvalidArgument, "payoff column has the wrong length");
  for (double u : column) {
    if (!(u > 0.0) || !std::isfinite(u)) {
      throw Error(ErrorCode::InvalidArgument, "payoff entries must be finite and positive");
    }
  }
  data_.insert(data_.end(), column.begin(), column.end());
  ids_.push_back(id);
}

PayoffMatrix PayoffMatrix::scaled(double s) const {
  PayoffMatrix out(*this);
  for (double& u : out.data_) u *= s;
  return out;
}

bool LpSolution::any_binding() const {
  return std::any_of(binding.begin(), binding.end(), [](bool b) { return b; });
}

std::vector<double> row_payoffs(const PayoffMatrix& U, std::span<const double> theta) {
  std::vector<double> out(U.rows(), 0.0);
  for (std::size_t k = 0; k < U.cols(); ++k) {
    if (theta[k] == 0.0) continue;
    for (std::size_t i = 0; i < U.rows(); ++i) out[i] += theta[k] * U(i, k);
  }
  return out;
}

namespace {

// Dense tableau for max c^T x s.t. A x <= b, x >= 0 with b >= 0, so the slack
// basis is feasible from the start.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_(rows * cols, 0.0), rhs_(rows, 0.0), obj_(cols, 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t j) { return a_[r * n_ + j]; }
  double at(std::size_t r, std::size_t j) const { return a_[r * n_ + j]; }
  double& rhs(std::size_t r) { return rhs_[r]; }
  double rhs(std::size_t r) const { return rhs_[r]; }
  double& obj(std::size_t j) { return obj_[j]; }
  double obj(std::size_t j) const { return obj_[j]; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t basis(std::size_t r) const { return basis_[r]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t j) {
    const double piv = at(r, j);
    double* row = &a_[r * n_];
    for (std::size_t c = 0; c < n_; ++c) row[c] /= piv;
    rhs_[r] /= piv;
    row[j] = 1.0;
    for (std::size_t s = 0; s < m_; ++s) {
      if (s == r) continue;
      const double f = at(s, j);
      if (f == 0.0) continue;
      double* other = &a_[s * n_];
      for (std::size_t c = 0; c < n_; ++c) other[c] -= f * row[c];
      other[j] = 0.0;
      rhs_[s] -= f * rhs_[r];
    }
    const double f = obj_[j];
    if (f != 0.0) {
      for (std::size_t c = 0; c < n_; ++c) obj_[c] -= f * row[c];
      obj_[j] = 0.0;
      objective_ -= f * rhs_[r];
    }
    basis_[r] = j;
  }

  double objective() const { return -objective_; }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> a_;
  std::vector<double> rhs_;
  std::vector<double> obj_;  // reduced costs z_j; optimal when all >= 0
  double objective_ = 0.0;
  std::vector<std::size_t> basis_;
};

enum class SimplexStatus { Optimal, PivotLimit, Unbounded };

SimplexStatus run_simplex(Tableau& T, bool bland, double cost_tol, double pivot_tol, std::size_t max_pivots,
                          std::size_t& pivots) {
  for (;;) {
    std::size_t enter = T.cols();
    double most_negative = -cost_tol;
    for (std::size_t j = 0; j < T.cols(); ++j) {
      if (T.obj(j) < most_negative) {
        enter = j;
        if (bland) break;
        most_negative = T.obj(j);
      }
    }
    if (enter == T.cols()) return SimplexStatus::Optimal;
    if (pivots >= max_pivots) return SimplexStatus::PivotLimit;

    std::size_t leave = T.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < T.rows(); ++r) {
      const double a = T.at(r, enter);
      if (a <= pivot_tol) continue;
      const double ratio = std::max(T.rhs(r), 0.0) / a;
      const bool tie = leave < T.rows() && std::abs(ratio - best_ratio) <= 1e-13 * std::max(1.0, best_ratio);
      if ((!tie && ratio < best_ratio) || (tie && T.basis(r) < T.basis(leave))) {
        best_ratio = tie ? std::min(ratio, best_ratio) : ratio;
        leave = r;
      }
    }
    if (leave == T.rows()) return SimplexStatus::Unbounded;
    T.pivot(leave, enter);
    ++pivots;
  }
}

struct Attempt {
  LpSolution solution;
  bool ok = false;
  std::string failure;
};

Attempt attempt_solve(const PayoffMatrix& U, std::span<const double> delta, const LpOptions& options,
                      bool bland) {
  const std::size_t n = U.rows();
  const std::size_t K = U.cols();
  const std::size_t nq = n - 1;           // q_i = p_i - delta_i for i < n-1
  const std::size_t v_col = nq;           // column of v
  const std::size_t ns = n;               // structural columns
  const std::size_t m = K + (n >= 2 ? 1 : 0);
  const std::size_t last = n - 1;

  double delta_head = 0.0;  // sum of delta_i, i < n-1
  for (std::size_t i = 0; i < nq; ++i) delta_head += delta[i];
  const double slack_total = 1.0 - delta_head - delta[last];

  double scale = 1.0;
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, U(i, k));
  }

  Tableau T(m, ns + m);
  std::vector<double> rhs0(m);
  for (std::size_t k = 0; k < K; ++k) {
    double constant = (1.0 - delta_head) * U(last, k);
    for (std::size_t i = 0; i < nq; ++i) {
      constant += delta[i] * U(i, k);
      T.at(k, i) = -(U(i, k) - U(last, k));
    }
    T.at(k, v_col) = 1.0;
    T.at(k, ns + k) = 1.0;
    T.rhs(k) = constant;
    rhs0[k] = constant;
    T.basis(k) = ns + k;
  }
  if (n >= 2) {
    for (std::size_t i = 0; i < nq; ++i) T.at(K, i) = 1.0;
    T.at(K, ns + K) = 1.0;
    T.rhs(K) = slack_total;
    rhs0[K] = slack_total;
    T.basis(K) = ns + K;
  }
  T.obj(v_col) = -1.0;

  Attempt out;
  out.solution.used_bland = bland;
  const double cost_tol = 1e-12 * scale;
  const double pivot_tol = 1e-11 * scale;
  const std::size_t max_pivots = 50 * (m + ns + m) + 100;
  std::size_t pivots = 0;
  const SimplexStatus status = run_simplex(T, bland, cost_tol, pivot_tol, max_pivots, pivots);
  out.solution.pivots = pivots;
  if (status != SimplexStatus::Optimal) {
    out.failure = status == SimplexStatus::PivotLimit ? "pivot limit reached" : "unbounded ray found";
    return out;
  }

  std::vector<double> x(ns + m, 0.0);
  for (std::size_t r = 0; r < m; ++r) x[T.basis(r)] = std::max(T.rhs(r), 0.0);

  std::vector<double> p(n);
  for (std::size_t i = 0; i < nq; ++i) p[i] = delta[i] + x[i];
  p[last] = n >= 2 ? delta[last] + x[ns + K] : 1.0;
  double sum = 0.0;
  for (double v : p) sum += v;
  for (double& v : p) v /= sum;

  LpSolution& sol = out.solution;
  sol.p = HidingStrategy(p);
  sol.v = x[v_col];
  sol.binding.assign(n, false);
  for (std::size_t i = 0; i < nq; ++i) sol.binding[i] = x[i] <= options.binding_tol * delta[i];
  if (n >= 2) sol.binding[last] = x[ns + K] <= options.binding_tol * delta[last];

  sol.theta.assign(K, 0.0);
  double theta_sum = 0.0;
  sol.dual_value = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double y = std::max(T.obj(ns + r), 0.0);
    sol.dual_value += y * rhs0[r];
    if (r < K) {
      sol.theta[r] = y;
      theta_sum += y;
    }
  }

  // Post-solve certificates.
  double v_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += sol.p[i] * U(i, k);
    v_min = std::min(v_min, s);
  }
  const double tol = options.value_tol * std::max(1.0, std::abs(sol.v));
  if (std::abs(v_min - sol.v) > tol) {
    out.failure = "primal value " + std::to_string(sol.v) + " disagrees with min column payoff " +
                  std::to_string(v_min);
    return out;
  }
  if (std::abs(theta_sum - 1.0) > options.value_tol) {
    out.failure = "dual weights sum to " + std::to_string(theta_sum);
    return out;
  }
  if (std::abs(sol.dual_value - sol.v) > tol) {
    out.failure = "duality gap " + std::to_string(sol.dual_value - sol.v);
    return out;
  }
  for (double& t : sol.theta) t /= theta_sum;
  out.ok = true;
  return out;
}

}  // namespace

LpSolution solve_hider_lp(const PayoffMatrix& U, std::span<const double> delta, const LpOptions& options) {
  if (U.rows() == 0 || U.cols() == 0) throw Error(ErrorCode::InvalidArgument, "empty payoff matrix");
  if (delta.size() != U.rows()) throw Error(ErrorCode::InvalidArgument, "one floor per box is required");
  double total = 0.0;
  for (double d : delta) {
    if (!(d >= 0.0)) throw Error(ErrorCode::InvalidArgument, "floors must be nonnegative");
    total += d;
  }
  if (!(total < 1.0) && !(U.rows() == 1 && total <= 1.0)) {
    throw Error(ErrorCode::Infeasible, "floors sum to " + std::to_string(total));
  }

  Attempt first = attempt_solve(U, delta, options, options.bland);
  if (first.ok) return first.solution;
  if (!options.bland) {
    Attempt second = attempt_solve(U, delta, options, true);
    if (second.ok) return second.solution;
  }
  throw Error(ErrorCode::NumericalFailure, "hider LP failed: " + first.failure);
}

std::vector<double> recover_searcher_mixture(const PayoffMatrix& U, std::span<const double> delta,
                                             const LpSolution& solution, const LpOptions& options) {
  (void)delta;
  const std::size_t n = U.rows();
  if (solution.theta.size() != U.cols()) {
    throw Error(ErrorCode::InvalidArgument, "solution does not match the payoff matrix");
  }
  std::vector<double> theta = solution.theta;
  const double top = *std::max_element(theta.begin(), theta.end());
  double sum = 0.0;
  for (double& t : theta) {
    if (t < 1e-12 * top) t = 0.0;
    sum += t;
  }
  for (double& t : theta) t /= sum;

  const double v = solution.v;
  const double tol = options.value_tol * std::max(1.0, std::abs(v));
  std::size_t support = 0;
  for (std::size_t k = 0; k < U.cols(); ++k) {
    if (theta[k] == 0.0) continue;
    ++support;
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += solution.p[i] * U(i, k);
    if (theta[k] * (col - v) > tol) {
      throw Error(ErrorCode::DualInconsistent, "column " + std::to_string(k) + " carries weight " +
                                                   std::to_string(theta[k]) + " but is not tight");
    }
  }
  if (support > n) {
    throw Error(ErrorCode::DualInconsistent,
                "searcher support " + std::to_string(support) + " exceeds " + std::to_string(n));
  }

  const auto rows = row_payoffs(U, theta);
  double lambda = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!solution.binding[i]) lambda = std::max(lambda, rows[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!solution.binding[i] && std::abs(rows[i] - lambda) > tol) {
      throw Error(ErrorCode::DualInconsistent, "box " + std::to_string(i + 1) + " earns " +
                                                   std::to_string(rows[i]) + " against the mixture, expected " +
                                                   std::to_string(lambda));
    }
    if (solution.binding[i] && rows[i] > lambda + tol) {
      throw Error(ErrorCode::DualInconsistent, "bound box " + std::to_string(i + 1) + " beats the mixture");
    }
  }
  if (!solution.any_binding() && std::abs(lambda - v) > tol) {
    throw Error(ErrorCode::DualInconsistent, "mixture guarantees " + std::to_string(lambda) +
                                                 ", value is " + std::to_string(v));
  }
  return theta;
}

}  // namespace hideseek
