#include "trivia/readability.hpp"

#include <cctype>

#include "trivia/error.hpp"
#include "trivia/text.hpp"

namespace trivia {

std::string_view to_string(FogBin bin) noexcept {
  switch (bin) {
    case FogBin::low: return "low";
    case FogBin::mid: return "mid";
    case FogBin::high: return "high";
  }
  return "low";
}

int count_syllables(std::string_view word) {
  std::string letters;
  for (char c : word) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalpha(u) && u < 0x80) {
      letters.push_back(static_cast<char>(std::tolower(u)));
    }
  }
  auto vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
  };
  int count = 0;
  bool in_group = false;
  for (char c : letters) {
    if (vowel(c)) {
      if (!in_group) ++count;
      in_group = true;
    } else {
      in_group = false;
    }
  }
  const std::size_t n = letters.size();
  if (n >= 2 && letters[n - 1] == 'e' && letters[n - 2] != 'l') --count;
  return count < 1 ? 1 : count;
}

bool is_complex_word(std::string_view word) { return count_syllables(word) > 2; }

bool is_word_token(std::string_view token) { return has_alnum(token); }

FogBin fog_bin(double score, double low_max, double mid_max) {
  if (score < low_max) return FogBin::low;
  if (score < mid_max) return FogBin::mid;
  return FogBin::high;
}

FogResult fog_index(std::span<const std::vector<std::string>> sentences,
                    double low_max, double mid_max) {
  std::size_t words = 0;
  std::size_t complex = 0;
  std::size_t sentence_count = 0;
  for (const auto& sentence : sentences) {
    bool any = false;
    for (const auto& token : sentence) {
      if (!is_word_token(token)) continue;
      any = true;
      ++words;
      if (is_complex_word(token)) ++complex;
    }
    if (any) ++sentence_count;
  }
  if (words == 0) throw Error(ErrorKind::NoWords, "FOG needs at least one word");
  const double score =
      0.4 * (static_cast<double>(words) / static_cast<double>(sentence_count) +
             100.0 * static_cast<double>(complex) / static_cast<double>(words));
  return FogResult{score, fog_bin(score, low_max, mid_max)};
}

}  // namespace trivia
