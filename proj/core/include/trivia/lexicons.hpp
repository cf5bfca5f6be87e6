#pragma once

#include <set>
#include <string>

namespace trivia {

struct Lexicons {
  std::set<std::string> stopwords;
  /// Words that signal opposing ideas ("but", "although", ...).
  std::set<std::string> contradictions;
  std::set<std::string> superlative_tags;
  /// FOG bins: [0, fog_low_max) low, [fog_low_max, fog_mid_max) mid, rest high.
  double fog_low_max = 7.0;
  double fog_mid_max = 15.0;

  /// Bundled stopword file, default contradiction list, {JJS, RBS}, 7 / 15.
  static Lexicons defaults();

  std::string stopwords_checksum() const;
  std::string contradictions_checksum() const;
  void validate() const;
};

}  // namespace trivia
