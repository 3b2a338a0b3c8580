#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "hideseek/game.hpp"
#include "hideseek/gittins.hpp"
#include "hideseek/solver.hpp"
#include "hideseek/study.hpp"

namespace hideseek {

/// {"t": [...], "alpha": [...], "cyclic": {"c": ..., "x": [...]}, "allow_perfect": bool}
/// with "alpha" optional when "cyclic" is given.
GameDescription parse_game_description(std::string_view json_text);
SearchGame parse_game(std::string_view json_text);
SearchGame load_game(const std::string& path);
std::string game_to_json(const SearchGame& game);

/// {"boxes": [...], "cycle": {"pattern": [...], "entry": [...]}} with 1-based
/// boxes. Periodic sequences contribute the prefix before the cycle followed
/// by one pass of the pattern; other sequences their first `prefix_len` boxes.
std::string sequence_to_json(SearchSequence& xi, std::size_t prefix_len = 64);
/// Rebuilds a periodic sequence; the JSON must carry a cycle.
SearchSequence parse_sequence(const SearchGame& game, std::string_view json_text);

std::string solution_to_json(Solution& solution, std::size_t prefix_len = 64);
std::string p0_result_to_json(P0TestResult& result, std::size_t prefix_len = 64);
std::string summary_to_json(const BatchSummary& summary);

}  // namespace hideseek
