#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "trivia/baselines.hpp"
#include "trivia/error.hpp"

using namespace trivia;
using trivia::testing::make_sentence;

namespace {

std::vector<std::string> ids_of(const RankedList& list) {
  std::vector<std::string> ids;
  for (const auto& e : list.entries) ids.push_back(e.item_id);
  return ids;
}

FeatureVector vec(std::string group, int grade, double x, std::string id) {
  FeatureVector v;
  v.group_id = std::move(group);
  v.grade = grade;
  v.item_id = std::move(id);
  if (x != 0.0) v.entries = {{0, x}};
  v.entries.emplace_back(1, 1.0);
  return v;
}

}  // namespace

TEST(RandomBaseline, DeterministicPermutationPrefix) {
  const std::vector<std::string> ids{"a", "b", "c", "d", "e", "f"};
  const auto one = baseline_random("m", ids, 4, 9);
  EXPECT_EQ(one, baseline_random("m", ids, 4, 9));
  ASSERT_EQ(one.entries.size(), 4u);
  auto got = ids_of(one);
  std::sort(got.begin(), got.end());
  EXPECT_TRUE(std::adjacent_find(got.begin(), got.end()) == got.end());
  for (const auto& e : one.entries) {
    EXPECT_EQ(e.score, 0.0);
    EXPECT_EQ(ids[e.index], e.item_id);
  }
  EXPECT_EQ(baseline_random("m", ids, 10, 9).entries.size(), 6u);
  EXPECT_THROW(baseline_random("m", ids, 0, 9), Error);
  bool differs = false;
  for (std::uint64_t s = 0; s < 10 && !differs; ++s) {
    differs = ids_of(baseline_random("m", ids, 6, s)) != ids_of(baseline_random("m", ids, 6, 9));
  }
  EXPECT_TRUE(differs);
}

TEST(SupposBaseline, BestAndWorstTieBreaks) {
  const std::vector<SupposItem> items{{"s1", 1, 0}, {"s2", 2, 0}, {"s3", 1, 1}, {"s4", 0, 1}};
  EXPECT_EQ(ids_of(baseline_suppos("m", items, SupposMode::best, 0)),
            (std::vector<std::string>{"s2", "s3", "s1", "s4"}));
  EXPECT_EQ(ids_of(baseline_suppos("m", items, SupposMode::worst, 0)),
            (std::vector<std::string>{"s2", "s1", "s3", "s4"}));
  const auto random = baseline_suppos("m", items, SupposMode::random, 3);
  EXPECT_EQ(random.entries.front().item_id, "s2");
  EXPECT_EQ(random.entries.back().item_id, "s4");
  EXPECT_EQ(random, baseline_suppos("m", items, SupposMode::random, 3));
  EXPECT_EQ(random.entries.front().score, 2.0);
}

TEST(SupposBaseline, MissingLabels) {
  const std::vector<SupposItem> items{{"s1", 1, std::nullopt}, {"s2", 1, 1}};
  try {
    baseline_suppos("m", items, SupposMode::best, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingLabels);
  }
  EXPECT_NO_THROW(baseline_suppos("m", items, SupposMode::random, 0));
}

TEST(SupposBaseline, CountsSuperlativeTags) {
  const auto s = make_sentence("m", {{"the", "DT", 2}, {"most", "RBS", 2}, {"famous", "JJ"},
                                     {"best", "JJS", 2}});
  EXPECT_EQ(superlative_count(s, Lexicons::defaults()), 2);
}

TEST(ClassifierBaseline, SeparableTrainingRanksPositivesFirst) {
  const std::vector<FeatureVector> train{vec("t", 4, 1.0, "a"), vec("t", 3, 0.8, "b"),
                                         vec("t", 2, 0.0, "c"), vec("t", 1, -0.7, "d"),
                                         vec("t", 0, -1.0, "e")};
  const std::vector<FeatureVector> test{vec("y", 0, -0.5, "y1"), vec("x", 0, 0.9, "x1"),
                                        vec("y", 0, 0.6, "y2"), vec("x", 0, -0.9, "x2")};
  const auto lists = baseline_classifier(train, test, 2, TrainOptions{}, GradeScale::five_grade);
  ASSERT_EQ(lists.size(), 2u);
  EXPECT_EQ(lists[0].group_id, "x");
  EXPECT_EQ(ids_of(lists[0]), (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(ids_of(lists[1]), (std::vector<std::string>{"y2", "y1"}));
  EXPECT_EQ(lists[1].entries[0].index, 1u);
  EXPECT_GT(lists[0].entries[0].score, 0.0);
  EXPECT_LT(lists[0].entries[1].score, 0.0);
}

TEST(ClassifierBaseline, SingleClassTraining) {
  const std::vector<FeatureVector> train{vec("t", 4, 1.0, "a"), vec("t", 2, 0.0, "c"),
                                         vec("t", 3, 0.5, "b")};
  const std::vector<FeatureVector> test{vec("x", 0, 1.0, "x1")};
  try {
    baseline_classifier(train, test, 2, TrainOptions{}, GradeScale::five_grade);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingleClassTraining);
  }
  const std::vector<FeatureVector> two{vec("t", 1, 1.0, "a"), vec("t", 0, -1.0, "b")};
  EXPECT_NO_THROW(baseline_classifier(two, test, 2, TrainOptions{}, GradeScale::two_grade));
}
