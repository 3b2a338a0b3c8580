#include "hideseek/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hideseek/error.hpp"
#include "hideseek/game_lp.hpp"

namespace hideseek {

const char* to_string(Termination t) noexcept {
  return t == Termination::Converged ? "converged" : "max_iterations";
}

std::vector<std::size_t> Solution::support() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (theta[k] > 0.0) out.push_back(k);
  }
  return out;
}

std::vector<double> Solution::mixture_payoffs() const {
  const std::size_t n = p_star.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (theta[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] += theta[k] * payoffs[k][i].midpoint();
  }
  return out;
}

namespace {

SearchSequence sequence_against(const SearchGame& game, const HidingStrategy& p) {
  const auto order = TieOrdering::identity(game.size());
  if (game.is_cyclic() && p.full_support()) {
    try {
      return cyclic_sequence(game, p, order);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoCycleDetected) throw;
    }
  }
  return SearchSequence::gittins(game, p, order);
}

std::size_t dedupe_horizon(const SearchGame& game, std::size_t horizon) {
  std::size_t len = horizon;
  if (game.is_cyclic()) len = std::max(len, 4 * static_cast<std::size_t>(game.cyclic()->x_hat));
  return len;
}

// Column store shared by the solver and the p0 test.
class ColumnStore {
 public:
  ColumnStore(const SearchGame& game, double rel_tol) : game_(game), rel_tol_(rel_tol), matrix_(game.size()) {}

  std::size_t add(SearchSequence xi) {
    auto column = payoff_column(game_, xi, rel_tol_);
    std::vector<double> mid(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
      if (column[i].unbounded) {
        throw Error(ErrorCode::NumericalFailure, "stored sequence never searches box " + std::to_string(i + 1));
      }
      mid[i] = column[i].midpoint();
    }
    matrix_.add_column(mid);
    sequences_.push_back(std::move(xi));
    payoffs_.push_back(std::move(column));
    return sequences_.size() - 1;
  }

  bool contains_prefix(SearchSequence& xi, std::size_t len) {
    const auto head = xi.prefix(len);
    for (auto& s : sequences_) {
      if (s.prefix(len) == head) return true;
    }
    return false;
  }

  const PayoffMatrix& matrix() const { return matrix_; }
  std::vector<SearchSequence>& sequences() { return sequences_; }
  std::vector<std::vector<PayoffBracket>>& payoffs() { return payoffs_; }

 private:
  const SearchGame& game_;
  double rel_tol_;
  PayoffMatrix matrix_;
  std::vector<SearchSequence> sequences_;
  std::vector<std::vector<PayoffBracket>> payoffs_;
};

void seed_with_p0(ColumnStore& store, const SearchGame& game, const std::vector<TieOrdering>& orderings,
                  std::size_t horizon) {
  const std::size_t len = dedupe_horizon(game, horizon);
  for (const auto& order : orderings) {
    SearchSequence xi = p0_sequence(game, order);
    if (store.contains_prefix(xi, len)) continue;
    store.add(std::move(xi));
  }
}

}  // namespace

BestResponse best_response_value(const SearchGame& game, const HidingStrategy& p, double rel_tol) {
  if (p.size() != game.size()) throw Error(ErrorCode::InvalidArgument, "strategy size mismatch");
  BestResponse out{PayoffBracket{}, sequence_against(game, p), !p.full_support()};
  if (out.xi.cycle()) {
    const auto column = payoff_column(game, out.xi, rel_tol);
    out.value = expected_payoff(p, column);
  } else {
    out.value = expected_payoff(game, p, out.xi, rel_tol);
  }
  return out;
}

Solution solve(const SearchGame& game, const SolveConfig& config) {
  if (!(config.epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (config.max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be at least 1");
  const std::size_t n = game.size();

  Solution sol;
  sol.floor = hider_floor(game, {config.shrink, config.absolute_floor});

  ColumnStore store(game, config.payoff_rel_tol);
  seed_with_p0(store, game, config.all_initial_orderings ? all_orderings(n) : initial_orderings(n),
               P0TestOptions{}.horizon);

  LpSolution lp;
  for (std::size_t k = 1;; ++k) {
    lp = solve_hider_lp(store.matrix(), sol.floor.delta);
    BestResponse br = best_response_value(game, lp.p, config.payoff_rel_tol);

    IterationRecord rec;
    rec.iter = k;
    rec.U = lp.v;
    rec.L = br.value.lower;
    rec.gap = rec.U / rec.L - 1.0;
    rec.binding = lp.binding;
    const bool converged = rec.gap < config.epsilon && !lp.any_binding();
    const bool exhausted = !converged && k >= config.max_iterations;
    if (!converged && !exhausted) rec.added_seq = static_cast<long>(store.add(std::move(br.xi)));

    sol.trace.push_back(rec);
    sol.iterations = k;
    sol.L = rec.L;
    sol.U = rec.U;
    if (converged || exhausted) {
      sol.termination = converged ? Termination::Converged : Termination::MaxIterations;
      break;
    }
  }

  sol.p_star = lp.p;
  sol.theta = recover_searcher_mixture(store.matrix(), sol.floor.delta, lp);
  sol.sequences = std::move(store.sequences());
  sol.payoffs = std::move(store.payoffs());
  return sol;
}

P0TestResult test_p0_optimality(const SearchGame& game, const P0TestOptions& options) {
  const std::size_t n = game.size();
  const auto orderings = all_orderings(n, options.cap);

  ColumnStore store(game, options.payoff_rel_tol);
  seed_with_p0(store, game, orderings, options.horizon);

  const std::vector<double> no_floor(n, 0.0);
  const LpSolution lp = solve_hider_lp(store.matrix(), no_floor);

  P0TestResult out;
  out.u_p0 = expected_payoff(p0(game), store.payoffs().front());
  out.v_D = lp.v;
  out.relative_gap = (out.v_D - out.u_p0.midpoint()) / out.v_D;
  out.optimal = std::abs(out.relative_gap) < options.threshold;
  out.p_D = lp.p;
  out.theta = recover_searcher_mixture(store.matrix(), no_floor, lp);
  out.sequences_used = store.sequences().size();
  out.sequences = std::move(store.sequences());
  return out;
}

std::string trace_csv(const Solution& solution) {
  std::string out = "iter,U,L,gap,added_seq,binding_mask\n";
  char buf[160];
  for (const auto& r : solution.trace) {
    std::string mask;
    for (bool b : r.binding) mask += b ? '1' : '0';
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%ld,", r.iter, r.U, r.L, r.gap, r.added_seq);
    out += buf;
    out += mask;
    out += '\n';
  }
  return out;
}

}  // namespace hideseek
