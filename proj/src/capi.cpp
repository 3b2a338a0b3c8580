#include "hideseek/hideseek.h"

#include <new>
#include <optional>
#include <string>
#include <vector>

#include "hideseek/bounds.hpp"
#include "hideseek/error.hpp"
#include "hideseek/io.hpp"
#include "hideseek/solver.hpp"
#include "hideseek/study.hpp"

using namespace hideseek;

struct hs_game {
  SearchGame game;
  std::string json;
};

struct hs_solution {
  Solution solution;
  std::string json;
  std::string trace;
};

struct hs_p0_result {
  P0TestResult result;
  std::string json;
};

struct hs_batch {
  std::vector<BatchRecord> records;
  std::optional<BatchSummary> summary;
  std::string summary_error;
  std::string csv;
  std::string summary_json;
};

struct hs_ruckle {
  std::vector<RuckleRecord> records;
  std::string csv;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_code;

hs_status fail(hs_status status, const char* code, const std::string& message) {
  last_code = code;
  last_error = message;
  return status;
}

template <typename F>
hs_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    last_code.clear();
    return HS_OK;
  } catch (const Error& e) {
    return fail(is_input_error(e.code()) ? HS_ERR_INVALID_INPUT : HS_ERR_NUMERICAL, to_string(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HS_ERR_INTERNAL, "OutOfMemory", "out of memory");
  } catch (const std::exception& e) {
    return fail(HS_ERR_INTERNAL, "Internal", e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

hs_game* wrap(SearchGame game) {
  std::string json = game_to_json(game);
  return new hs_game{std::move(game), std::move(json)};
}

}  // namespace

extern "C" {

const char* hs_version(void) { return "1.0.0"; }
const char* hs_last_error(void) { return last_error.c_str(); }
const char* hs_last_error_code(void) { return last_code.c_str(); }

hs_status hs_game_new(size_t n, const double* t, const double* alpha, int allow_perfect, hs_game** out) {
  return guard([&] {
    require(out != nullptr, "null output handle");
    require(n == 0 || (t != nullptr && alpha != nullptr), "null parameter array");
    GameDescription raw;
    raw.t.assign(t, t + n);
    raw.alpha.assign(alpha, alpha + n);
    raw.allow_perfect = allow_perfect != 0;
    *out = wrap(validate_game(raw));
  });
}

hs_status hs_game_new_cyclic(double c, size_t n, const int* x, const double* t, hs_game** out) {
  return guard([&] {
    require(out != nullptr, "null output handle");
    require(n == 0 || (t != nullptr && x != nullptr), "null parameter array");
    *out = wrap(make_cyclic_game(c, std::vector<int>(x, x + n), std::vector<double>(t, t + n)));
  });
}

hs_status hs_game_from_json(const char* json, hs_game** out) {
  return guard([&] {
    require(out != nullptr && json != nullptr, "null argument");
    *out = wrap(parse_game(json));
  });
}

hs_status hs_game_load(const char* path, hs_game** out) {
  return guard([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = wrap(load_game(path));
  });
}

hs_status hs_game_sample(const char* scheme, size_t n, uint64_t seed, hs_game** out) {
  return guard([&] {
    require(out != nullptr && scheme != nullptr, "null argument");
    *out = wrap(sample_game(SampleScheme::by_name(scheme), n, seed));
  });
}

void hs_game_free(hs_game* game) { delete game; }

size_t hs_game_size(const hs_game* game) { return game ? game->game.size() : 0; }
int hs_game_is_cyclic(const hs_game* game) { return game && game->game.is_cyclic() ? 1 : 0; }
const char* hs_game_json(const hs_game* game) { return game ? game->json.c_str() : ""; }

hs_status hs_game_p0(const hs_game* game, double* p_out) {
  return guard([&] {
    require(game != nullptr && p_out != nullptr, "null argument");
    const HidingStrategy p = p0(game->game);
    for (size_t i = 0; i < p.size(); ++i) p_out[i] = p[i];
  });
}

hs_status hs_game_value_bounds(const hs_game* game, double* lower, double* upper) {
  return guard([&] {
    require(game != nullptr && lower != nullptr && upper != nullptr, "null argument");
    const ValueBounds b = value_bounds(game->game);
    *lower = b.lower;
    *upper = b.upper;
  });
}

hs_status hs_best_response(const hs_game* game, const double* p, double* lower, double* upper) {
  return guard([&] {
    require(game != nullptr && p != nullptr && lower != nullptr && upper != nullptr, "null argument");
    const HidingStrategy strategy(std::vector<double>(p, p + game->game.size()));
    const BestResponse br = best_response_value(game->game, strategy);
    if (br.value.unbounded) throw Error(ErrorCode::InvalidStrategy, "expected detection time is infinite");
    *lower = br.value.lower;
    *upper = br.value.upper;
  });
}

void hs_solve_config_init(hs_solve_config* config) {
  if (!config) return;
  const SolveConfig d;
  config->epsilon = d.epsilon;
  config->max_iterations = d.max_iterations;
  config->shrink = d.shrink;
  config->payoff_rel_tol = d.payoff_rel_tol;
}

hs_status hs_solve(const hs_game* game, const hs_solve_config* config, hs_solution** out) {
  return guard([&] {
    require(game != nullptr && out != nullptr, "null argument");
    SolveConfig c;
    if (config) {
      c.epsilon = config->epsilon;
      c.max_iterations = config->max_iterations;
      c.shrink = config->shrink;
      c.payoff_rel_tol = config->payoff_rel_tol;
    }
    auto* handle = new hs_solution{solve(game->game, c), {}, {}};
    try {
      handle->json = solution_to_json(handle->solution);
      handle->trace = trace_csv(handle->solution);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

void hs_solution_free(hs_solution* solution) { delete solution; }

double hs_solution_lower(const hs_solution* s) { return s ? s->solution.L : 0.0; }
double hs_solution_upper(const hs_solution* s) { return s ? s->solution.U : 0.0; }
size_t hs_solution_iterations(const hs_solution* s) { return s ? s->solution.iterations : 0; }
int hs_solution_converged(const hs_solution* s) {
  return s && s->solution.termination == Termination::Converged ? 1 : 0;
}

hs_status hs_solution_hider(const hs_solution* s, double* p_out) {
  return guard([&] {
    require(s != nullptr && p_out != nullptr, "null argument");
    for (size_t i = 0; i < s->solution.p_star.size(); ++i) p_out[i] = s->solution.p_star[i];
  });
}

size_t hs_solution_support_size(const hs_solution* s) { return s ? s->solution.support().size() : 0; }
const char* hs_solution_json(const hs_solution* s) { return s ? s->json.c_str() : ""; }
const char* hs_solution_trace_csv(const hs_solution* s) { return s ? s->trace.c_str() : ""; }

hs_status hs_test_p0(const hs_game* game, hs_p0_result** out) {
  return guard([&] {
    require(game != nullptr && out != nullptr, "null argument");
    auto* handle = new hs_p0_result{test_p0_optimality(game->game), {}};
    try {
      handle->json = p0_result_to_json(handle->result);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

void hs_p0_result_free(hs_p0_result* r) { delete r; }
int hs_p0_result_optimal(const hs_p0_result* r) { return r && r->result.optimal ? 1 : 0; }
double hs_p0_result_value(const hs_p0_result* r) { return r ? r->result.v_D : 0.0; }
double hs_p0_result_u_p0(const hs_p0_result* r) { return r ? r->result.u_p0.midpoint() : 0.0; }
const char* hs_p0_result_json(const hs_p0_result* r) { return r ? r->json.c_str() : ""; }

void hs_batch_config_init(hs_batch_config* config) {
  if (!config) return;
  config->scheme = "varied";
  config->n = 2;
  config->count = 200;
  config->epsilon = BatchOptions{}.epsilon;
  config->seed = 1;
  config->threads = 1;
}

hs_status hs_batch_run(const hs_batch_config* config, hs_batch** out) {
  return guard([&] {
    require(config != nullptr && out != nullptr && config->scheme != nullptr, "null argument");
    BatchOptions options;
    options.epsilon = config->epsilon;
    options.threads = config->threads;
    auto* handle = new hs_batch;
    try {
      handle->records = run_batch(SampleScheme::by_name(config->scheme), config->n, config->count, config->seed,
                                  options);
      handle->csv = batch_csv(handle->records);
      try {
        handle->summary = summarize(handle->records);
        handle->summary_json = summary_to_json(*handle->summary);
      } catch (const Error& e) {
        handle->summary_error = e.what();
      }
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

void hs_batch_free(hs_batch* batch) { delete batch; }
size_t hs_batch_count(const hs_batch* batch) { return batch ? batch->records.size() : 0; }

hs_status hs_batch_summarize(const hs_batch* batch, hs_batch_summary* out) {
  return guard([&] {
    require(batch != nullptr && out != nullptr, "null argument");
    if (!batch->summary) throw Error(ErrorCode::EmptyBatch, batch->summary_error);
    const BatchSummary& s = *batch->summary;
    *out = hs_batch_summary{s.count,  s.failures,           s.mean_pct_below,  s.p95_pct_below, s.tested,
                            s.fraction_p0_optimal, s.solved, s.mean_iterations, s.p95_iterations};
  });
}

const char* hs_batch_csv(const hs_batch* batch) { return batch ? batch->csv.c_str() : ""; }
const char* hs_batch_summary_json(const hs_batch* batch) { return batch ? batch->summary_json.c_str() : ""; }

hs_status hs_ruckle_sweep(const double* alphas, size_t count, hs_ruckle** out) {
  return guard([&] {
    require(out != nullptr && (count == 0 || alphas != nullptr), "null argument");
    auto* handle = new hs_ruckle;
    try {
      handle->records = ruckle_sweep(std::vector<double>(alphas, alphas + count));
      handle->csv = ruckle_csv(handle->records);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

void hs_ruckle_free(hs_ruckle* sweep) { delete sweep; }
size_t hs_ruckle_count(const hs_ruckle* sweep) { return sweep ? sweep->records.size() : 0; }

hs_status hs_ruckle_get(const hs_ruckle* sweep, size_t k, hs_ruckle_record* out) {
  return guard([&] {
    require(sweep != nullptr && out != nullptr, "null argument");
    require(k < sweep->records.size(), "record index out of range");
    const RuckleRecord& r = sweep->records[k];
    *out = hs_ruckle_record{r.alpha, r.p0_1, r.p_star_1, r.h, r.p0_optimal ? 1 : 0};
  });
}

const char* hs_ruckle_csv(const hs_ruckle* sweep) { return sweep ? sweep->csv.c_str() : ""; }

hs_status hs_two_box_study(size_t count, uint64_t seed, hs_two_box_result* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    const TwoBoxStudy s = two_box_study(count, seed);
    *out = hs_two_box_result{s.n_suboptimal, s.n_pstar_greater, s.n_pstar_smaller};
  });
}

}  // extern "C"
