#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hideseek/hideseek.h"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

int report(hs_status status) {
  std::cerr << "error: " << hs_last_error() << '\n';
  return status == HS_ERR_INVALID_INPUT ? kExitInvalid : kExitNumerical;
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

int run_solve(const std::string& path, double epsilon, std::size_t max_iterations, const std::string& trace) {
  hs_game* game = nullptr;
  if (hs_status s = hs_game_load(path.c_str(), &game); s != HS_OK) return report(s);
  hs_solve_config config;
  hs_solve_config_init(&config);
  config.epsilon = epsilon;
  if (max_iterations > 0) config.max_iterations = max_iterations;
  hs_solution* sol = nullptr;
  const hs_status s = hs_solve(game, &config, &sol);
  hs_game_free(game);
  if (s != HS_OK) return report(s);
  int code = 0;
  if (!trace.empty() && !write_file(trace, hs_solution_trace_csv(sol))) code = kExitInvalid;
  std::cout << hs_solution_json(sol) << '\n';
  if (!hs_solution_converged(sol)) std::cerr << "warning: iteration limit reached before convergence\n";
  hs_solution_free(sol);
  return code;
}

int run_test_p0(const std::string& path) {
  hs_game* game = nullptr;
  if (hs_status s = hs_game_load(path.c_str(), &game); s != HS_OK) return report(s);
  hs_p0_result* res = nullptr;
  const hs_status s = hs_test_p0(game, &res);
  hs_game_free(game);
  if (s != HS_OK) return report(s);
  std::cout << hs_p0_result_json(res) << '\n';
  hs_p0_result_free(res);
  return 0;
}

int run_batch(hs_batch_config config, bool full_scale, const std::string& out) {
  if (full_scale) config.count = config.n * 1000;
  hs_batch* batch = nullptr;
  if (hs_status s = hs_batch_run(&config, &batch); s != HS_OK) return report(s);
  int code = 0;
  if (out.empty()) {
    std::cout << hs_batch_csv(batch);
    std::cerr << hs_batch_summary_json(batch) << '\n';
  } else {
    if (!write_file(out, hs_batch_csv(batch))) code = kExitInvalid;
    std::cout << hs_batch_summary_json(batch) << '\n';
  }
  hs_batch_free(batch);
  return code;
}

int run_ruckle(const std::vector<double>& alphas, const std::string& out) {
  hs_ruckle* sweep = nullptr;
  if (hs_status s = hs_ruckle_sweep(alphas.data(), alphas.size(), &sweep); s != HS_OK) return report(s);
  int code = 0;
  if (out.empty()) {
    std::cout << hs_ruckle_csv(sweep);
  } else if (!write_file(out, hs_ruckle_csv(sweep))) {
    code = kExitInvalid;
  } else {
    for (std::size_t k = 0; k < hs_ruckle_count(sweep); ++k) {
      hs_ruckle_record r;
      hs_ruckle_get(sweep, k, &r);
      std::printf("alpha=%g h=%d p0_1=%.6f p_star_1=%.6f\n", r.alpha, r.h, r.p0_1, r.p_star_1);
    }
  }
  hs_ruckle_free(sweep);
  return code;
}

int run_two_box(std::size_t count, std::uint64_t seed) {
  hs_two_box_result r;
  if (hs_status s = hs_two_box_study(count, seed, &r); s != HS_OK) return report(s);
  std::printf("{\"n_suboptimal\": %zu, \"n_pstar_greater\": %zu, \"n_pstar_smaller\": %zu}\n", r.n_suboptimal,
              r.n_pstar_greater, r.n_pstar_smaller);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solve hide-and-search games with overlook probabilities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hs_version());

  std::string game_path;
  double epsilon = 1e-6;
  std::size_t max_iterations = 0;
  std::string trace_path;
  auto* solve = app.add_subcommand("solve", "Compute epsilon-optimal strategies for a game file");
  solve->add_option("game", game_path, "Game JSON file")->required();
  solve->add_option("--epsilon", epsilon, "Relative gap target")->check(CLI::PositiveNumber);
  solve->add_option("--max-iterations", max_iterations, "Iteration safeguard");
  solve->add_option("--trace", trace_path, "Write the iteration trace as CSV");

  auto* test_p0 = app.add_subcommand("test-p0", "Decide whether p0 is an optimal hiding strategy");
  test_p0->add_option("game", game_path, "Game JSON file")->required();

  hs_batch_config batch_config;
  hs_batch_config_init(&batch_config);
  std::string scheme = batch_config.scheme;
  bool full_scale = false;
  std::string out_path;
  auto* batch = app.add_subcommand("batch", "Solve a batch of sampled games and write one CSV row per game");
  batch->add_option("--scheme", scheme, "varied, low, medium or high")
      ->check(CLI::IsMember({"varied", "low", "medium", "high"}));
  batch->add_option("--n", batch_config.n, "Boxes per game")->check(CLI::PositiveNumber);
  batch->add_option("--count", batch_config.count, "Number of games")->check(CLI::PositiveNumber);
  batch->add_option("--epsilon", batch_config.epsilon, "Relative gap target")->check(CLI::PositiveNumber);
  batch->add_option("--seed", batch_config.seed, "Random seed");
  batch->add_option("--threads", batch_config.threads, "Worker threads")->check(CLI::PositiveNumber);
  batch->add_flag("--full-scale", full_scale, "Use n x 1000 games");
  batch->add_option("--out", out_path, "CSV output file (stdout when omitted)");

  std::vector<double> alphas;
  auto* ruckle = app.add_subcommand("ruckle", "Sweep alpha_1 in the two-box game with a perfect second box");
  ruckle->add_option("--alphas", alphas, "Comma-separated alpha_1 values")->delimiter(',')->required();
  ruckle->add_option("--out", out_path, "CSV output file (stdout when omitted)");

  std::size_t study_count = 500;
  std::uint64_t study_seed = 1;
  auto* two_box = app.add_subcommand("two-box-study", "Compare p*_1 with p0_1 across sampled two-box games");
  two_box->add_option("--count", study_count, "Number of games")->check(CLI::PositiveNumber);
  two_box->add_option("--seed", study_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  if (*solve) return run_solve(game_path, epsilon, max_iterations, trace_path);
  if (*test_p0) return run_test_p0(game_path);
  if (*batch) {
    batch_config.scheme = scheme.c_str();
    return run_batch(batch_config, full_scale, out_path);
  }
  if (*ruckle) return run_ruckle(alphas, out_path);
  return run_two_box(study_count, study_seed);
}
