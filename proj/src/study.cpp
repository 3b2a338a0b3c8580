#include "hideseek/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "hideseek/error.hpp"
#include "hideseek/solver.hpp"

namespace hideseek {

SearchGame batch_game(const SampleScheme& scheme, std::size_t n, std::uint64_t seed, std::size_t index) {
  return sample_game(scheme, n, Rng(seed).split(index));
}

namespace {

SearchGame two_box(double t1, double t2, double a1, double a2, bool allow_perfect = false) {
  GameDescription desc;
  desc.t = {t1, t2};
  desc.alpha = {a1, a2};
  desc.allow_perfect = allow_perfect;
  return validate_game(desc);
}

BatchRecord run_one(const SampleScheme& scheme, std::size_t n, std::uint64_t seed, std::size_t index,
                    const BatchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  BatchRecord rec;
  rec.index = index;
  rec.scheme = scheme.name;
  try {
    const SearchGame game = batch_game(scheme, n, seed, index);
    rec.t.assign(game.times().begin(), game.times().end());
    rec.alpha.assign(game.alphas().begin(), game.alphas().end());

    bool need_solve = true;
    if (n <= options.p0_test_max_n) {
      const P0TestResult test = test_p0_optimality(game);
      rec.p0_tested = true;
      rec.p0_optimal = test.optimal;
      rec.u_p0 = test.u_p0.midpoint();
      if (test.optimal) {
        rec.v_star = test.v_D;
        need_solve = false;
      }
    } else {
      rec.u_p0 = best_response_value(game, p0(game)).value.midpoint();
    }
    if (need_solve) {
      SolveConfig config;
      config.epsilon = options.epsilon;
      const Solution sol = solve(game, config);
      rec.v_star = sol.U;
      rec.iterations = sol.iterations;
      if (sol.termination != Termination::Converged) rec.error = "solver reached the iteration limit";
    }
    rec.pct_below = 100.0 * (rec.v_star - rec.u_p0) / rec.v_star;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

std::vector<BatchRecord> run_batch(const SampleScheme& scheme, std::size_t n, std::size_t count, std::uint64_t seed,
                                   const BatchOptions& options) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "batch count must be at least 1");
  if (n == 0) throw Error(ErrorCode::EmptyGame, "batch games need at least one box");
  std::vector<BatchRecord> records(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) records[k] = run_one(scheme, n, seed, k, options);
    return records;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < count; k += workers) records[k] = run_one(scheme, n, seed, k, options);
    });
  }
  for (auto& th : pool) th.join();
  return records;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::EmptyBatch, "no values");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

BatchSummary summarize(const std::vector<BatchRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyBatch, "no batch records");
  BatchSummary s;
  s.count = records.size();
  std::vector<double> pct;
  std::vector<double> iters;
  std::size_t optimal = 0;
  for (const auto& r : records) {
    if (!r.ok()) {
      ++s.failures;
      continue;
    }
    pct.push_back(r.pct_below);
    if (r.p0_tested) {
      ++s.tested;
      if (r.p0_optimal) ++optimal;
    }
    if (!r.p0_optimal) iters.push_back(static_cast<double>(r.iterations));
  }
  if (pct.empty()) throw Error(ErrorCode::EmptyBatch, "every record in the batch failed");
  double sum = 0.0;
  for (double v : pct) sum += v;
  s.mean_pct_below = sum / static_cast<double>(pct.size());
  s.p95_pct_below = percentile(pct, 0.95);
  if (s.tested > 0) s.fraction_p0_optimal = static_cast<double>(optimal) / static_cast<double>(s.tested);
  s.solved = iters.size();
  if (!iters.empty()) {
    double isum = 0.0;
    for (double v : iters) isum += v;
    s.mean_iterations = isum / static_cast<double>(iters.size());
    s.p95_iterations = percentile(iters, 0.95);
  }
  return s;
}

int ruckle_h(double alpha, double p1, double tol, double* residual) {
  if (!(p1 > 0.0 && p1 < 1.0)) return 0;
  const double log2 = std::log1p(-p1);
  const double log_decay = std::log1p(-alpha);
  for (int s = 1; s <= 100000; ++s) {
    const double log1 = std::log(p1) + std::log(alpha) + (s - 1) * log_decay;
    if (log1 <= log2 + std::log1p(tol)) {
      if (residual) *residual = std::abs(std::expm1(log1 - log2));
      return s;
    }
  }
  return 0;
}

std::vector<RuckleRecord> ruckle_sweep(const std::vector<double>& alphas) {
  std::vector<RuckleRecord> out;
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::ProbabilityOutOfRange, "Ruckle alpha must lie in (0, 1)");
    const SearchGame game = two_box(1.0, 1.0, a, 1.0, true);

    RuckleRecord rec;
    rec.alpha = a;
    rec.p0_1 = p0(game)[0];
    const P0TestResult test = test_p0_optimality(game);
    rec.p0_optimal = test.optimal;
    if (test.optimal) {
      rec.p_star_1 = rec.p0_1;
    } else {
      // The solver needs alpha_2 < 1; a box that overlooks with probability
      // 1e-9 stands in for the perfect one.
      const SearchGame proxy = two_box(1.0, 1.0, a, 1.0 - 1e-9);
      SolveConfig config;
      config.epsilon = 1e-9;
      rec.p_star_1 = solve(proxy, config).p_star[0];
    }
    rec.h = ruckle_h(a, rec.p_star_1, 1e-6, &rec.tie_residual);
    out.push_back(rec);
  }
  return out;
}

SearchGame two_box_game(std::uint64_t seed, std::size_t index) {
  const SearchGame game = sample_game(SampleScheme::varied(), 2, Rng(seed).split(index));
  if (future_benefit(game, 0) <= future_benefit(game, 1)) return game;
  return two_box(game.t(1), game.t(0), game.alpha(1), game.alpha(0));
}

TwoBoxStudy two_box_study(std::size_t count, std::uint64_t seed, double epsilon) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "study count must be at least 1");
  TwoBoxStudy out;
  for (std::size_t k = 0; k < count; ++k) {
    const SearchGame game = two_box_game(seed, k);
    if (test_p0_optimality(game).optimal) continue;
    ++out.n_suboptimal;
    SolveConfig config;
    config.epsilon = epsilon;
    const double diff = solve(game, config).p_star[0] - p0(game)[0];
    if (diff > 0.0) ++out.n_pstar_greater;
    if (diff < 0.0) ++out.n_pstar_smaller;
  }
  return out;
}

// CSV ----------------------------------------------------------------------

namespace {

constexpr const char* kBatchHeader = "index,scheme,t,alpha,v_star,u_p0,p0_tested,p0_optimal,pct_below,iterations,wall_time,error";
constexpr const char* kRuckleHeader = "alpha,p0_1,p_star_1,h,p0_optimal,tie_residual";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ';';
    out += fmt(v[k]);
  }
  return out;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        fields.back() += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double to_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw Error(ErrorCode::ParseError, "not a number: '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw Error(ErrorCode::ParseError, "not an integer: '" + s + "'");
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& s) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw Error(ErrorCode::ParseError, "not a 0/1 flag: '" + s + "'");
}

std::vector<double> to_list(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = std::min(s.find(';', pos), s.size());
    out.push_back(to_double(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

// Data rows of a CSV document: skips comment lines and checks the header.
std::vector<std::vector<std::string>> data_rows(std::string_view text, std::string_view header,
                                                std::size_t width) {
  std::vector<std::vector<std::string>> rows;
  bool seen_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (line != header) throw Error(ErrorCode::ParseError, "unexpected CSV header: " + std::string(line));
      seen_header = true;
      continue;
    }
    auto fields = split_row(line);
    if (fields.size() != width) {
      throw Error(ErrorCode::ParseError, "expected " + std::to_string(width) + " fields, got " +
                                             std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  if (!seen_header) throw Error(ErrorCode::ParseError, "missing CSV header");
  return rows;
}

}  // namespace

std::string batch_csv(const std::vector<BatchRecord>& records) {
  std::string out = "# hideseek batch v1\n";
  out += kBatchHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.index) + ',' + quote(r.scheme) + ',' + join(r.t) + ',' + join(r.alpha) + ',' +
           fmt(r.v_star) + ',' + fmt(r.u_p0) + ',' + (r.p0_tested ? "1" : "0") + ',' +
           (r.p0_optimal ? "1" : "0") + ',' + fmt(r.pct_below) + ',' + std::to_string(r.iterations) + ',' +
           fmt(r.wall_time) + ',' + quote(r.error) + '\n';
  }
  return out;
}

std::vector<BatchRecord> parse_batch_csv(std::string_view text) {
  std::vector<BatchRecord> out;
  for (const auto& f : data_rows(text, kBatchHeader, 12)) {
    BatchRecord r;
    r.index = to_size(f[0]);
    r.scheme = f[1];
    r.t = to_list(f[2]);
    r.alpha = to_list(f[3]);
    r.v_star = to_double(f[4]);
    r.u_p0 = to_double(f[5]);
    r.p0_tested = to_bool(f[6]);
    r.p0_optimal = to_bool(f[7]);
    r.pct_below = to_double(f[8]);
    r.iterations = to_size(f[9]);
    r.wall_time = to_double(f[10]);
    r.error = f[11];
    out.push_back(std::move(r));
  }
  return out;
}

std::string ruckle_csv(const std::vector<RuckleRecord>& records) {
  std::string out = "# hideseek ruckle v1\n";
  out += kRuckleHeader;
  out += '\n';
  for (const auto& r : records) {
    out += fmt(r.alpha) + ',' + fmt(r.p0_1) + ',' + fmt(r.p_star_1) + ',' + std::to_string(r.h) + ',' +
           (r.p0_optimal ? "1" : "0") + ',' + fmt(r.tie_residual) + '\n';
  }
  return out;
}

std::vector<RuckleRecord> parse_ruckle_csv(std::string_view text) {
  std::vector<RuckleRecord> out;
  for (const auto& f : data_rows(text, kRuckleHeader, 6)) {
    RuckleRecord r;
    r.alpha = to_double(f[0]);
    r.p0_1 = to_double(f[1]);
    r.p_star_1 = to_double(f[2]);
    r.h = static_cast<int>(to_size(f[3]));
    r.p0_optimal = to_bool(f[4]);
    r.tie_residual = to_double(f[5]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hideseek
