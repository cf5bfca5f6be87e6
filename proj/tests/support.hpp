#pragma once

#include <cctype>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trivia/corpus.hpp"
#include "trivia/text.hpp"

namespace trivia::testing {

struct Tok {
  std::string text;
  std::string pos;
  int head = kRootHead;
  std::string deprel = "dep";
  std::string ner = "O";
  std::string lemma;
};

inline AnnotatedSentence make_sentence(std::string entity_id,
                                       const std::vector<Tok>& toks,
                                       std::string sentence_id = "s1") {
  AnnotatedSentence s;
  s.entity_id = std::move(entity_id);
  s.sentence_id = std::move(sentence_id);
  std::vector<std::string> words;
  for (const auto& t : toks) {
    Token token;
    token.text = t.text;
    token.pos = t.pos;
    token.head = t.head;
    token.deprel = t.deprel;
    token.ner = t.ner;
    token.lemma = t.lemma.empty() ? unicode_lower(t.text) : t.lemma;
    s.tokens.push_back(token);
    words.push_back(t.text);
  }
  s.raw = join(words, " ");
  return s;
}

inline EntityRecord make_entity(
    std::string id, std::string name,
    std::map<std::string, std::set<std::string>> attributes = {}) {
  EntityRecord e;
  e.entity_id = std::move(id);
  e.display_name = name;
  e.aliases = {std::move(name)};
  e.attributes = std::move(attributes);
  return e;
}

/// Small seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace trivia::testing
