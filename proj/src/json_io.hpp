#pragma once

#include <string>

#include "channel.hpp"
#include "counts.hpp"
#include "game.hpp"

namespace qmem {

// JSON formats. Complex entries are [re, im] pairs; matrices are row-major
// nested arrays. Channels: {"d_in", "d_out", "kraus": [matrix...]} or
// {"d_in", "d_out", "choi": matrix}. Games: {"label", "inputs", "observables",
// "alpha", "eb_normalized", "setting_coefficients"?}. Counts: {"game_label",
// "settings": [{"input","observable","shots","successes"}...],
// "coefficients": [...]}.

Mat matrix_from_json_text(const std::string& text);
std::string matrix_to_json_text(const Mat& m);

QuantumChannel channel_from_json_text(const std::string& text);
std::string channel_to_json_text(const QuantumChannel& n);

Game game_from_json_text(const std::string& text);
std::string game_to_json_text(const Game& g);

CountsRecord counts_from_json_text(const std::string& text);

// Convenience file wrappers; parse errors carry the file path.
Mat load_matrix(const std::string& path);
QuantumChannel load_channel(const std::string& path);
Game load_game(const std::string& path);
CountsRecord load_counts(const std::string& path);
void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

} // namespace qmem
