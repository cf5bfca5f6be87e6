#include <gtest/gtest.h>

#include "support.hpp"
#include "trivia/annotate.hpp"
#include "trivia/error.hpp"

using namespace trivia;
using trivia::testing::make_entity;

namespace {

const Token& find_token(const AnnotatedSentence& s, std::string_view text) {
  for (const auto& t : s.tokens) {
    if (t.text == text) return t;
  }
  throw std::runtime_error("token not found: " + std::string(text));
}

}  // namespace

TEST(FallbackAnnotate, RootSubjectAndLemma) {
  const auto e = make_entity("gravity", "Gravity");
  const auto s = fallback_annotate("Gravity grossed $274,092,705 in North America.", e);
  EXPECT_EQ(s.tokens[s.root_index()].text, "grossed");
  EXPECT_EQ(s.tokens[s.root_index()].lemma, "gross");
  EXPECT_EQ(find_token(s, "Gravity").deprel, "nsubj");
  EXPECT_EQ(find_token(s, "$274,092,705").ner, "MONEY");
  EXPECT_EQ(find_token(s, ".").deprel, "punct");
}

TEST(FallbackAnnotate, SuperlativesAndContradictions) {
  const auto e = make_entity("m", "M");
  const auto s = fallback_annotate(
      "Although a very modest hit in theaters, it became one of the highest grossing "
      "video rentals of all time.",
      e);
  EXPECT_EQ(find_token(s, "highest").pos, "JJS");
  EXPECT_EQ(find_token(s, "modest").pos, "JJ");
  EXPECT_EQ(find_token(s, "Although").lemma, "although");
  EXPECT_EQ(s.tokens[s.root_index()].lemma, "become");
}

TEST(FallbackAnnotate, TagsKnowledgeBaseNamesAsPerson) {
  const auto e = make_entity("m", "M", {{"Director", {"Ana Ruiz"}}});
  const auto s = fallback_annotate("Later Ana Ruiz improvised the scene.", e);
  EXPECT_EQ(find_token(s, "Ana").ner, "PERSON");
  EXPECT_EQ(find_token(s, "Ruiz").ner, "PERSON");
  EXPECT_EQ(find_token(s, "improvised").lemma, "improvise");
}

TEST(FallbackAnnotate, EmptyInput) {
  try {
    fallback_annotate("   ", make_entity("m", "M"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyInput);
  }
}

TEST(FallbackAnnotate, EveryTokenHasValidHead) {
  const auto e = make_entity("m", "M");
  for (const char* text : {"The film was shot in Halifax.", "Wow!", "It rained; we left, sadly.",
                           "Ivy Chen became the youngest actress to win the prize."}) {
    const auto s = fallback_annotate(text, e);
    int roots = 0;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const int h = s.tokens[i].head;
      if (h == kRootHead) {
        ++roots;
      } else {
        EXPECT_GE(h, 0);
        EXPECT_LT(h, static_cast<int>(s.tokens.size()));
        EXPECT_NE(h, static_cast<int>(i));
      }
    }
    EXPECT_EQ(roots, 1) << text;
  }
}
