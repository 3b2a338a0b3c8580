/* C interface to the hide-and-search solver.
 *
 * Every object is an opaque handle released with its _free function. Calls
 * that can fail return an hs_status; on failure hs_last_error() describes the
 * problem for the calling thread. Strings returned by accessors are owned by
 * the handle and stay valid until it is freed. Box indices are 1-based.
 */
#ifndef HIDESEEK_H
#define HIDESEEK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HS_API __declspec(dllexport)
#else
#define HS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_INVALID_INPUT = 1, /* bad game, argument, file, or unsupported instance */
  HS_ERR_NUMERICAL = 2,     /* the numerics failed on a valid instance */
  HS_ERR_INTERNAL = 3
} hs_status;

typedef struct hs_game hs_game;
typedef struct hs_solution hs_solution;
typedef struct hs_p0_result hs_p0_result;
typedef struct hs_batch hs_batch;
typedef struct hs_ruckle hs_ruckle;

HS_API const char* hs_version(void);
HS_API const char* hs_last_error(void);
/* Symbolic name of the last failure, e.g. "NonPositiveTime". */
HS_API const char* hs_last_error_code(void);

/* Games ------------------------------------------------------------------ */

HS_API hs_status hs_game_new(size_t n, const double* t, const double* alpha, int allow_perfect, hs_game** out);
/* alpha_i = 1 - c^(1/x_i). */
HS_API hs_status hs_game_new_cyclic(double c, size_t n, const int* x, const double* t, hs_game** out);
HS_API hs_status hs_game_from_json(const char* json, hs_game** out);
HS_API hs_status hs_game_load(const char* path, hs_game** out);
/* scheme is one of "varied", "low", "medium", "high". */
HS_API hs_status hs_game_sample(const char* scheme, size_t n, uint64_t seed, hs_game** out);
HS_API void hs_game_free(hs_game* game);

HS_API size_t hs_game_size(const hs_game* game);
HS_API int hs_game_is_cyclic(const hs_game* game);
HS_API const char* hs_game_json(const hs_game* game);
/* Writes n probabilities. */
HS_API hs_status hs_game_p0(const hs_game* game, double* p_out);
HS_API hs_status hs_game_value_bounds(const hs_game* game, double* lower, double* upper);
/* Certified bracket on u(p) = min over search sequences of the expected detection time. */
HS_API hs_status hs_best_response(const hs_game* game, const double* p, double* lower, double* upper);

/* Solver ----------------------------------------------------------------- */

typedef struct hs_solve_config {
  double epsilon;
  size_t max_iterations;
  double shrink;
  double payoff_rel_tol;
} hs_solve_config;

HS_API void hs_solve_config_init(hs_solve_config* config);
/* config may be NULL for the defaults. */
HS_API hs_status hs_solve(const hs_game* game, const hs_solve_config* config, hs_solution** out);
HS_API void hs_solution_free(hs_solution* solution);

HS_API double hs_solution_lower(const hs_solution* solution);
HS_API double hs_solution_upper(const hs_solution* solution);
HS_API size_t hs_solution_iterations(const hs_solution* solution);
HS_API int hs_solution_converged(const hs_solution* solution);
HS_API hs_status hs_solution_hider(const hs_solution* solution, double* p_out);
/* Number of sequences carrying positive searcher weight. */
HS_API size_t hs_solution_support_size(const hs_solution* solution);
HS_API const char* hs_solution_json(const hs_solution* solution);
HS_API const char* hs_solution_trace_csv(const hs_solution* solution);

HS_API hs_status hs_test_p0(const hs_game* game, hs_p0_result** out);
HS_API void hs_p0_result_free(hs_p0_result* result);
HS_API int hs_p0_result_optimal(const hs_p0_result* result);
HS_API double hs_p0_result_value(const hs_p0_result* result);
HS_API double hs_p0_result_u_p0(const hs_p0_result* result);
HS_API const char* hs_p0_result_json(const hs_p0_result* result);

/* Studies ---------------------------------------------------------------- */

typedef struct hs_batch_config {
  const char* scheme;
  size_t n;
  size_t count;
  double epsilon;
  uint64_t seed;
  unsigned threads;
} hs_batch_config;

typedef struct hs_batch_summary {
  size_t count;
  size_t failures;
  double mean_pct_below;
  double p95_pct_below;
  size_t tested;
  double fraction_p0_optimal;
  size_t solved;
  double mean_iterations;
  double p95_iterations;
} hs_batch_summary;

HS_API void hs_batch_config_init(hs_batch_config* config);
HS_API hs_status hs_batch_run(const hs_batch_config* config, hs_batch** out);
HS_API void hs_batch_free(hs_batch* batch);
HS_API size_t hs_batch_count(const hs_batch* batch);
HS_API hs_status hs_batch_summarize(const hs_batch* batch, hs_batch_summary* out);
HS_API const char* hs_batch_csv(const hs_batch* batch);
HS_API const char* hs_batch_summary_json(const hs_batch* batch);

typedef struct hs_ruckle_record {
  double alpha;
  double p0_1;
  double p_star_1;
  int h;
  int p0_optimal;
} hs_ruckle_record;

HS_API hs_status hs_ruckle_sweep(const double* alphas, size_t count, hs_ruckle** out);
HS_API void hs_ruckle_free(hs_ruckle* sweep);
HS_API size_t hs_ruckle_count(const hs_ruckle* sweep);
HS_API hs_status hs_ruckle_get(const hs_ruckle* sweep, size_t k, hs_ruckle_record* out);
HS_API const char* hs_ruckle_csv(const hs_ruckle* sweep);

typedef struct hs_two_box_result {
  size_t n_suboptimal;
  size_t n_pstar_greater;
  size_t n_pstar_smaller;
} hs_two_box_result;

HS_API hs_status hs_two_box_study(size_t count, uint64_t seed, hs_two_box_result* out);

#ifdef __cplusplus
}
#endif

#endif /* HIDESEEK_H */
