#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trivia {

enum class FogBin { low, mid, high };

std::string_view to_string(FogBin bin) noexcept;

struct FogResult {
  double score = 0.0;
  FogBin bin = FogBin::low;
};

/// Vowel-group heuristic: each run of [aeiouy] counts one syllable, a final
/// 'e' not preceded by 'l' subtracts one, and every word has at least one.
/// Only ASCII letters are inspected (case-insensitive).
int count_syllables(std::string_view word);

/// More than two syllables.
bool is_complex_word(std::string_view word);

/// Tokens that contain a letter or digit count as words.
bool is_word_token(std::string_view token);

FogBin fog_bin(double score, double low_max = 7.0, double mid_max = 15.0);

/// 0.4 * (words / sentences + 100 * complex / words). Throws NoWords when the
/// sentences contain no word tokens.
FogResult fog_index(std::span<const std::vector<std::string>> sentences,
                    double low_max = 7.0, double mid_max = 15.0);

}  // namespace trivia
