#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "support.hpp"
#include "trivia/error.hpp"
#include "trivia/grading.hpp"

using namespace trivia;
using trivia::testing::Gen;

namespace {

TriviaRecord rec(std::int64_t x, std::int64_t y, std::string entity = "m",
                 std::string text = "t") {
  return TriviaRecord{std::move(entity), std::move(text), x, y, ""};
}

std::vector<int> grades_of(const std::vector<GradedTrivia>& g) {
  std::vector<int> out;
  for (const auto& x : g) out.push_back(x.grade);
  return out;
}

}  // namespace

TEST(LikenessRatio, Examples) {
  EXPECT_NEAR(likeness_ratio(rec(48, 124)), 0.3871, 5e-5);
  EXPECT_EQ(likeness_ratio(rec(0, 10)), 0.0);
  EXPECT_NEAR(likeness_ratio(rec(414, 417)), 0.9928, 5e-5);
  try {
    likeness_ratio(rec(0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroVotes);
  }
}

TEST(SupportFilter, Boundaries) {
  const GradingConfig cfg;
  const std::vector<TriviaRecord> in{rec(3, 4), rec(70, 99), rec(70, 100), rec(3, 6),
                                     rec(3, 5), rec(60, 99), rec(59, 99)};
  const auto kept = apply_support_filter(in, cfg);
  const std::vector<TriviaRecord> expected{rec(70, 100), rec(3, 6), rec(3, 5), rec(59, 99)};
  EXPECT_EQ(kept, expected);
}

TEST(SupportFilter, IdempotentSubsequence) {
  Gen gen(11);
  for (int round = 0; round < 50; ++round) {
    std::vector<TriviaRecord> in;
    for (int i = gen.integer(0, 30); i > 0; --i) {
      const int y = gen.integer(1, 200);
      in.push_back(rec(gen.integer(0, y), y, "m", std::to_string(i)));
    }
    const auto once = apply_support_filter(in, GradingConfig{});
    EXPECT_EQ(apply_support_filter(once, GradingConfig{}), once);
    auto it = in.begin();
    for (const auto& r : once) {
      it = std::find(it, in.end(), r);
      ASSERT_NE(it, in.end());
    }
  }
}

TEST(AssignGrades, TenDistinctRatios) {
  std::vector<TriviaRecord> in;
  for (int i = 1; i <= 10; ++i) in.push_back(rec(i, 10));
  // Independent count: the record with LR 0.2 has one smaller record, p = 10.
  const std::vector<int> expected{0, 1, 1, 2, 2, 2, 2, 2, 3, 4};
  EXPECT_EQ(grades_of(assign_grades(in, GradingConfig{})), expected);
}

TEST(AssignGrades, AllTiedGetGradeZero) {
  std::vector<TriviaRecord> in(7, rec(3, 10));
  for (int g : grades_of(assign_grades(in, GradingConfig{}))) EXPECT_EQ(g, 0);
}

TEST(AssignGrades, TopRecordOfLargeCorpusIsGradeFour) {
  std::vector<TriviaRecord> in;
  for (int i = 0; i < 200; ++i) in.push_back(rec(i % 100, 100));
  in.push_back(rec(100, 100));
  EXPECT_EQ(assign_grades(in, GradingConfig{}).back().grade, 4);
}

TEST(AssignGrades, EmptyInput) {
  try {
    assign_grades({}, GradingConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyAfterFilter);
  }
}

TEST(AssignGrades, MatchesBruteForceOracle) {
  Gen gen(2024);
  for (int round = 0; round < 300; ++round) {
    const int n = gen.integer(1, 12);
    std::vector<TriviaRecord> in;
    std::vector<oracle::Votes> votes;
    for (int i = 0; i < n; ++i) {
      const int y = gen.integer(1, 8);
      const int x = gen.integer(0, y);
      in.push_back(rec(x, y));
      votes.push_back({x, y});
    }
    EXPECT_EQ(grades_of(assign_grades(in, GradingConfig{})), oracle::grades(votes));
  }
}

TEST(AssignGrades, MonotoneAndOrderEquivariant) {
  Gen gen(7);
  for (int round = 0; round < 100; ++round) {
    std::vector<TriviaRecord> in;
    for (int i = gen.integer(1, 25); i > 0; --i) {
      in.push_back(rec(gen.integer(0, 20), 20, "m", std::to_string(i)));
    }
    const auto graded = assign_grades(in, GradingConfig{});
    for (std::size_t i = 0; i < graded.size(); ++i) {
      for (std::size_t j = 0; j < graded.size(); ++j) {
        if (graded[i].lr < graded[j].lr) EXPECT_LE(graded[i].grade, graded[j].grade);
        if (graded[i].lr == graded[j].lr) EXPECT_EQ(graded[i].grade, graded[j].grade);
      }
    }
    std::vector<std::size_t> perm(in.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    std::vector<TriviaRecord> shuffled;
    for (auto p : perm) shuffled.push_back(in[p]);
    const auto regraded = assign_grades(shuffled, GradingConfig{});
    for (std::size_t i = 0; i < perm.size(); ++i) {
      EXPECT_EQ(regraded[i], graded[perm[i]]);
    }
  }
}

TEST(TwoGrade, StrictHalfAndIdempotent) {
  std::vector<TriviaRecord> in{rec(39, 100), rec(99, 100), rec(50, 100)};
  auto graded = assign_grades(in, GradingConfig{});
  const auto two = to_two_grade(graded);
  EXPECT_EQ(two[0].class_label, 0);
  EXPECT_EQ(two[1].class_label, 1);
  EXPECT_EQ(two[2].class_label, 0);
  for (const auto& g : two) EXPECT_EQ(g.grade, *g.class_label);
  EXPECT_EQ(to_two_grade(two), two);
}

TEST(EntityFilters, LengthAndMinimumTrivia) {
  GradingConfig cfg;
  EXPECT_EQ(entity_filters(std::vector<TriviaRecord>{rec(1, 5)}, cfg).size(), 1u);
  cfg.max_chars = 140;
  std::vector<TriviaRecord> in{rec(1, 5, "a", std::string(141, 'x')),
                               rec(1, 5, "a", std::string(140, 'x'))};
  EXPECT_EQ(entity_filters(in, cfg).size(), 1u);
  // Code points, not bytes: 140 two-byte characters still fit.
  std::string wide;
  for (int i = 0; i < 140; ++i) wide += "\xC3\xA9";
  EXPECT_EQ(entity_filters(std::vector<TriviaRecord>{rec(1, 5, "a", wide)}, cfg).size(), 1u);

  GradingConfig min_cfg;
  min_cfg.min_trivia_per_entity = 10;
  std::vector<TriviaRecord> mixed;
  for (int i = 0; i < 9; ++i) mixed.push_back(rec(1, 5, "small"));
  for (int i = 0; i < 10; ++i) mixed.push_back(rec(1, 5, "big"));
  const auto kept = entity_filters(mixed, min_cfg);
  EXPECT_EQ(kept.size(), 10u);
  for (const auto& r : kept) EXPECT_EQ(r.entity_id, "big");
}

TEST(GradingConfig, Validation) {
  GradingConfig cfg;
  cfg.percentile_cutoffs = {75, 90};
  EXPECT_THROW(cfg.validate(), Error);
  cfg = GradingConfig{};
  cfg.base_min_votes = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(GradedJsonl, RoundTrip) {
  std::vector<TriviaRecord> in{rec(1, 10, "a", "x"), rec(9, 10, "b", "y")};
  const auto graded = to_two_grade(assign_grades(in, GradingConfig{}));
  std::stringstream buf;
  write_graded(buf, graded);
  const auto back = parse_graded(buf);
  ASSERT_EQ(back.size(), graded.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].record.text, graded[i].record.text);
    EXPECT_EQ(back[i].grade, graded[i].grade);
    EXPECT_EQ(back[i].lr, graded[i].lr);
    EXPECT_EQ(back[i].class_label, graded[i].class_label);
  }
}
