#include "trivia/lexicons.hpp"

#include "trivia/error.hpp"
#include "trivia/text.hpp"

namespace trivia {

namespace {

constexpr const char* kStopwords[] = {
#include "stopwords.inc"
};

std::string checksum_of(const std::set<std::string>& words) {
  std::string joined;
  for (const auto& w : words) {
    joined += w;
    joined += '\n';
  }
  return sha256_hex(joined);
}

}  // namespace

Lexicons Lexicons::defaults() {
  Lexicons lex;
  for (const char* w : kStopwords) lex.stopwords.insert(w);
  lex.contradictions = {"but",     "although", "though", "unlike",
                        "however", "despite",  "yet",    "whereas",
                        "nevertheless", "instead"};
  lex.superlative_tags = {"JJS", "RBS"};
  return lex;
}

std::string Lexicons::stopwords_checksum() const { return checksum_of(stopwords); }

std::string Lexicons::contradictions_checksum() const {
  return checksum_of(contradictions);
}

void Lexicons::validate() const {
  for (const auto* set : {&stopwords, &contradictions}) {
    for (const auto& w : *set) {
      if (w != unicode_lower(w)) {
        throw Error(ErrorKind::InvalidArgument, "lexicon entry not lowercase: " + w);
      }
    }
  }
  if (!(fog_low_max < fog_mid_max)) {
    throw Error(ErrorKind::InvalidArgument, "FOG bin boundaries must ascend");
  }
}

}  // namespace trivia
