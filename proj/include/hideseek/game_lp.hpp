#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hideseek/game.hpp"

namespace hideseek {

/// u[i][k] = u(i, xi_k): rows are boxes, columns are stored sequences.
class PayoffMatrix {
 public:
  explicit PayoffMatrix(std::size_t rows) : rows_(rows) {}

  /// Appends a column; entries must be finite and positive.
  void add_column(std::span<const double> column, std::size_t id);
  void add_column(std::span<const double> column) { add_column(column, cols()); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return ids_.size(); }
  double operator()(std::size_t i, std::size_t k) const { return data_[k * rows_ + i]; }
  std::span<const double> column(std::size_t k) const { return {data_.data() + k * rows_, rows_}; }
  std::size_t id(std::size_t k) const { return ids_[k]; }

  PayoffMatrix scaled(double s) const;

 private:
  std::size_t rows_;
  std::vector<double> data_;
  std::vector<std::size_t> ids_;
};

struct LpOptions {
  double binding_tol = 1e-9;  // relative to delta_i
  double value_tol = 1e-9;    // relative tolerance of post-solve checks
  bool bland = false;         // start with Bland's rule instead of largest-coefficient pivoting
};

struct LpSolution {
  HidingStrategy p;
  double v = 0.0;
  std::vector<bool> binding;
  std::vector<double> theta;  // dual weights over columns
  double dual_value = 0.0;
  std::size_t pivots = 0;
  bool used_bland = false;

  bool any_binding() const;
};

/// max v s.t. v <= sum_i p_i u[i][k] for every column, p_i >= delta_i, sum p = 1.
/// Solved in the n variables (p_1 - delta_1, ..., p_{n-1} - delta_{n-1}, v)
/// after eliminating p_n.
LpSolution solve_hider_lp(const PayoffMatrix& U, std::span<const double> delta, const LpOptions& options = {});

/// Searcher weights from the LP duals, pruned to their support and checked
/// against complementary slackness. When no floor binds, every box earns
/// u(i, theta) = v within tolerance.
std::vector<double> recover_searcher_mixture(const PayoffMatrix& U, std::span<const double> delta,
                                             const LpSolution& solution, const LpOptions& options = {});

/// u(i, theta) = sum_k theta_k u[i][k] for every row.
std::vector<double> row_payoffs(const PayoffMatrix& U, std::span<const double> theta);

}  // namespace hideseek
