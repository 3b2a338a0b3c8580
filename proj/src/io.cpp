#include "hideseek/io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hideseek/error.hpp"

namespace hideseek {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

template <typename T>
T field(const json& obj, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw Error(ErrorCode::ParseError, "unknown field '" + key + "'");
  }
}

std::vector<std::size_t> one_based(std::span<const BoxIndex> boxes) {
  std::vector<std::size_t> out(boxes.begin(), boxes.end());
  for (auto& b : out) ++b;
  return out;
}

std::vector<BoxIndex> zero_based(const std::vector<long>& boxes, std::size_t n) {
  std::vector<BoxIndex> out;
  out.reserve(boxes.size());
  for (long b : boxes) {
    if (b < 1 || static_cast<std::size_t>(b) > n) {
      throw Error(ErrorCode::ParseError, "box index " + std::to_string(b) + " out of range");
    }
    out.push_back(static_cast<BoxIndex>(b - 1));
  }
  return out;
}

json sequence_json(SearchSequence& xi, std::size_t prefix_len) {
  json out;
  if (const auto& cyc = xi.cycle()) {
    out["boxes"] = one_based(xi.prefix(cyc->start + cyc->pattern.size()));
    out["cycle"] = {{"pattern", one_based(cyc->pattern)}, {"entry", cyc->entry}};
  } else {
    out["boxes"] = one_based(xi.prefix(prefix_len));
  }
  return out;
}

json bracket_json(const PayoffBracket& b) {
  if (b.unbounded) return {{"unbounded", true}};
  return {{"lower", b.lower}, {"upper", b.upper}};
}

}  // namespace

GameDescription parse_game_description(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "game must be a JSON object");
  reject_unknown(doc, {"t", "alpha", "cyclic", "allow_perfect"});
  GameDescription raw;
  raw.t = field<std::vector<double>>(doc, "t");
  if (doc.contains("alpha")) raw.alpha = field<std::vector<double>>(doc, "alpha");
  if (doc.contains("cyclic") && !doc.at("cyclic").is_null()) {
    const json& cyc = doc.at("cyclic");
    if (!cyc.is_object()) throw Error(ErrorCode::ParseError, "'cyclic' must be an object");
    reject_unknown(cyc, {"c", "x"});
    raw.cyclic = GameDescription::Cyclic{field<double>(cyc, "c"), field<std::vector<int>>(cyc, "x")};
  }
  if (doc.contains("allow_perfect")) raw.allow_perfect = field<bool>(doc, "allow_perfect");
  if (raw.alpha.empty() && !raw.cyclic) throw Error(ErrorCode::ParseError, "missing field 'alpha'");
  return raw;
}

SearchGame parse_game(std::string_view json_text) { return validate_game(parse_game_description(json_text)); }

SearchGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

std::string game_to_json(const SearchGame& game) {
  const GameDescription d = game.describe();
  json out = {{"t", d.t}, {"alpha", d.alpha}};
  if (d.cyclic) out["cyclic"] = {{"c", d.cyclic->c}, {"x", d.cyclic->x}};
  if (d.allow_perfect) out["allow_perfect"] = true;
  return out.dump();
}

std::string sequence_to_json(SearchSequence& xi, std::size_t prefix_len) {
  return sequence_json(xi, prefix_len).dump();
}

SearchSequence parse_sequence(const SearchGame& game, std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object() || !doc.contains("cycle")) {
    throw Error(ErrorCode::ParseError, "only sequences with a cycle can be rebuilt");
  }
  reject_unknown(doc, {"boxes", "cycle"});
  const std::size_t n = game.size();
  const auto boxes = zero_based(field<std::vector<long>>(doc, "boxes"), n);
  const json& cyc = doc.at("cycle");
  reject_unknown(cyc, {"pattern", "entry"});
  const auto pattern = zero_based(field<std::vector<long>>(cyc, "pattern"), n);
  const auto entry = field<std::vector<std::size_t>>(cyc, "entry");
  if (entry.size() != n) throw Error(ErrorCode::ParseError, "cycle entry needs one count per box");
  const std::size_t start = std::accumulate(entry.begin(), entry.end(), std::size_t{0});
  if (pattern.empty() || boxes.size() < start + pattern.size() ||
      !std::equal(pattern.begin(), pattern.end(), boxes.begin() + static_cast<long>(start))) {
    throw Error(ErrorCode::ParseError, "boxes do not end with one pass of the cycle");
  }
  std::vector<BoxIndex> prefix(boxes.begin(), boxes.begin() + static_cast<long>(start));
  std::vector<std::size_t> counts(n, 0);
  for (BoxIndex b : prefix) ++counts[b];
  if (counts != entry) throw Error(ErrorCode::ParseError, "cycle entry counts disagree with the prefix");
  return SearchSequence::periodic(game, std::move(prefix), pattern);
}

std::string solution_to_json(Solution& solution, std::size_t prefix_len) {
  json theta = json::array();
  for (std::size_t k : solution.support()) {
    theta.push_back({{"weight", solution.theta[k]},
                     {"column", k},
                     {"sequence", sequence_json(solution.sequences[k], prefix_len)}});
  }
  json out = {
      {"p_star", std::vector<double>(solution.p_star.values().begin(), solution.p_star.values().end())},
      {"L", solution.L},
      {"U", solution.U},
      {"iterations", solution.iterations},
      {"termination", to_string(solution.termination)},
      {"theta", theta},
      {"mixture_payoffs", solution.mixture_payoffs()},
      {"floors", solution.floor.delta},
      {"columns", solution.sequences.size()},
  };
  return out.dump();
}

std::string p0_result_to_json(P0TestResult& result, std::size_t prefix_len) {
  json theta = json::array();
  for (std::size_t k = 0; k < result.theta.size(); ++k) {
    if (result.theta[k] == 0.0) continue;
    theta.push_back({{"weight", result.theta[k]}, {"sequence", sequence_json(result.sequences[k], prefix_len)}});
  }
  json out = {
      {"optimal", result.optimal},
      {"v_D", result.v_D},
      {"u_p0", bracket_json(result.u_p0)},
      {"relative_gap", result.relative_gap},
      {"p_D", std::vector<double>(result.p_D.values().begin(), result.p_D.values().end())},
      {"sequences_used", result.sequences_used},
      {"theta", theta},
  };
  return out.dump();
}

std::string summary_to_json(const BatchSummary& s) {
  json out = {
      {"count", s.count},
      {"failures", s.failures},
      {"mean_pct_below", s.mean_pct_below},
      {"p95_pct_below", s.p95_pct_below},
      {"tested", s.tested},
      {"fraction_p0_optimal", s.fraction_p0_optimal},
      {"solved", s.solved},
      {"mean_iterations", s.mean_iterations},
      {"p95_iterations", s.p95_iterations},
  };
  return out.dump();
}

}  // namespace hideseek
