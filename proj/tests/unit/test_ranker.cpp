#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "support.hpp"
#include "trivia/error.hpp"
#include "trivia/evalkit.hpp"
#include "trivia/ranker.hpp"
#include "trivia/solver.hpp"

using namespace trivia;
using trivia::testing::Gen;

namespace {

FeatureVector vec(std::string group, int grade,
                  std::vector<std::pair<std::uint32_t, double>> entries,
                  std::string id = "") {
  FeatureVector v;
  v.group_id = std::move(group);
  v.grade = grade;
  v.entries = std::move(entries);
  v.item_id = id.empty() ? v.group_id + ":" + std::to_string(grade) : std::move(id);
  return v;
}

// Four groups of five; feature 0 carries the grade, feature 1+g is noise.
std::vector<FeatureVector> separable_fixture(std::uint64_t seed) {
  Gen gen(seed);
  std::vector<FeatureVector> items;
  for (int g = 0; g < 4; ++g) {
    for (int grade = 0; grade < 5; ++grade) {
      items.push_back(vec("g" + std::to_string(g), grade,
                          {{0, 0.5 * grade}, {static_cast<std::uint32_t>(1 + g), gen.real(0.1, 1.0)}},
                          "g" + std::to_string(g) + "i" + std::to_string(grade)));
    }
  }
  return items;
}

void expect_kind(ErrorKind kind, const auto& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(BuildPairs, WorkedExample) {
  const std::vector<FeatureVector> items{vec("a", 2, {}), vec("a", 0, {}), vec("a", 2, {}),
                                         vec("b", 1, {}), vec("b", 3, {})};
  const std::vector<PreferencePair> expected{{"a", 0, 1}, {"a", 2, 1}, {"b", 4, 3}};
  EXPECT_EQ(build_pairs(items), expected);
}

TEST(BuildPairs, MatchesBruteForce) {
  Gen gen(3);
  for (int round = 0; round < 200; ++round) {
    const int n = gen.integer(0, 12);
    std::vector<FeatureVector> items;
    std::vector<std::string> groups;
    std::vector<int> grades;
    for (int i = 0; i < n; ++i) {
      groups.push_back(std::string(1, static_cast<char>('a' + gen.integer(0, 3))));
      grades.push_back(gen.integer(0, 4));
      items.push_back(vec(groups.back(), grades.back(), {}));
    }
    const auto got = build_pairs(items);
    std::set<std::tuple<std::string, std::size_t, std::size_t>> as_set;
    for (const auto& p : got) as_set.insert({p.group_id, p.higher, p.lower});
    EXPECT_EQ(as_set.size(), got.size());
    EXPECT_EQ(as_set, oracle::pairs(groups, grades));
    for (std::size_t i = 1; i < got.size(); ++i) {
      EXPECT_LE(got[i - 1].group_id, got[i].group_id);
      if (got[i - 1].group_id == got[i].group_id) {
        const auto key = [](const PreferencePair& p) {
          return std::pair(std::min(p.higher, p.lower), std::max(p.higher, p.lower));
        };
        EXPECT_LT(key(got[i - 1]), key(got[i]));
      }
    }
  }
}

TEST(BuildPairs, UngradedItemRejected) {
  auto v = vec("a", 1, {});
  v.grade.reset();
  const std::vector<FeatureVector> items{v};
  expect_kind(ErrorKind::InvalidArgument, [&] { build_pairs(items); });
}

TEST(Train, SeparableFixture) {
  const auto items = separable_fixture(11);
  const auto model = train(items, 5, "sum", TrainOptions{});
  const auto& r = model.train_report;
  EXPECT_EQ(r.pair_count, 40u);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.violated_pairs, 0u);
  EXPECT_GT(model.weights[0], 0.0);
  ASSERT_FALSE(r.objective_trace.empty());
  for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
    EXPECT_LE(r.objective_trace[i], r.objective_trace[i - 1] + 1e-12);
  }
  EXPECT_GE(r.final_objective, r.dual_objective - 1e-9);
  EXPECT_EQ(model.space_checksum, "sum");
  EXPECT_EQ(model.c_param, 17.0);
  EXPECT_EQ(model.epsilon, 0.21);

  const auto held_out = separable_fixture(99);
  for (int g = 0; g < 4; ++g) {
    const std::span<const FeatureVector> group(held_out.data() + 5 * g, 5);
    const auto list = rank(model, group);
    std::vector<int> grades;
    for (const auto& e : list.entries) grades.push_back(*group[e.index].grade);
    EXPECT_NEAR(ndcg_at_k(grades, 10), 1.0, 1e-12);
  }
}

TEST(Train, Errors) {
  const std::vector<FeatureVector> flat{vec("a", 1, {{0, 1.0}}), vec("a", 1, {{0, 2.0}}),
                                        vec("b", 0, {{0, 1.0}})};
  expect_kind(ErrorKind::NoPairs, [&] { train(flat, 1, "", TrainOptions{}); });
  const auto items = separable_fixture(1);
  TrainOptions bad;
  bad.c = 0.0;
  expect_kind(ErrorKind::NonPositiveC, [&] { train(items, 5, "", bad); });
  bad.c = -1.0;
  expect_kind(ErrorKind::NonPositiveC, [&] { train(items, 5, "", bad); });
  FeatureSpace unfrozen;
  expect_kind(ErrorKind::UnfrozenSpace, [&] { train(items, unfrozen, TrainOptions{}); });
}

TEST(Train, DeterministicForSeed) {
  const auto items = separable_fixture(5);
  TrainOptions opts;
  opts.seed = 42;
  const auto a = train(items, 5, "x", opts);
  const auto b = train(items, 5, "x", opts);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.to_json(), b.to_json());
}

TEST(Train, ViolatedPairsMatchDefinition) {
  Gen gen(8);
  for (int round = 0; round < 20; ++round) {
    std::vector<FeatureVector> items;
    for (int i = 0; i < 12; ++i) {
      items.push_back(vec(std::string(1, static_cast<char>('a' + i % 2)), gen.integer(0, 3),
                          {{0, gen.real(-1, 1)}, {1, gen.real(-1, 1)}, {2, gen.real(-1, 1)}}));
    }
    TrainOptions opts;
    opts.c = gen.real(0.1, 5.0);
    opts.seed = static_cast<std::uint64_t>(round);
    RankingModel model;
    try {
      model = train(items, 3, "", opts);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::NoPairs);
      continue;
    }
    std::size_t violated = 0;
    for (const auto& p : build_pairs(items)) {
      const double m = score(model, items[p.higher]) - score(model, items[p.lower]);
      violated += m < 1.0 - opts.epsilon;
    }
    EXPECT_EQ(model.train_report.violated_pairs, violated);
    for (std::size_t i = 1; i < model.train_report.objective_trace.size(); ++i) {
      EXPECT_LE(model.train_report.objective_trace[i],
                model.train_report.objective_trace[i - 1] + 1e-12);
    }
  }
}

TEST(Solver, DualNeverExceedsPrimal) {
  Gen gen(21);
  for (int round = 0; round < 30; ++round) {
    HingeProblem p;
    p.dimension = 4;
    for (int i = 0; i < 15; ++i) {
      SparseRow row;
      for (std::uint32_t d = 0; d < 4; ++d) {
        if (gen.coin(0.7)) row.emplace_back(d, gen.real(-2, 2));
      }
      p.rows.push_back(row);
      p.labels.push_back(gen.coin() ? 1 : -1);
    }
    SolverOptions opts;
    opts.c = gen.real(0.05, 3.0);
    opts.epsilon = 1e-3;
    const auto r = solve_hinge_dual(p, opts);
    EXPECT_LE(r.dual_objective, r.primal_objective + 1e-9);
    for (double a : r.alpha) {
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, opts.c);
    }
  }
}

TEST(Score, DotProductAndSpaceCheck) {
  RankingModel model;
  model.weights = {1.0, -2.0};
  const auto x = vec("m", 0, {{0, 3.0}, {1, 1.0}});
  EXPECT_DOUBLE_EQ(score(model, x), 1.0);

  FeatureSpace space;
  space.add("a", FeatureBlock::linguistic);
  space.add("b", FeatureBlock::linguistic);
  space.freeze();
  model.space_checksum = space.checksum();
  EXPECT_DOUBLE_EQ(score(model, space, x), 1.0);
  model.space_checksum = "other";
  expect_kind(ErrorKind::SpaceMismatch, [&] { score(model, space, x); });
}

TEST(Rank, TiesByIndexAndMixedGroups) {
  RankingModel model;
  model.weights = {1.0};
  const std::vector<FeatureVector> items{vec("m", 0, {{0, 0.2}}, "a"), vec("m", 0, {{0, 0.9}}, "b"),
                                         vec("m", 0, {{0, 0.9}}, "c"), vec("m", 0, {{0, -1.0}}, "d")};
  const auto list = rank(model, items);
  std::vector<std::size_t> order;
  for (const auto& e : list.entries) order.push_back(e.index);
  EXPECT_EQ(order, (std::vector<std::size_t>{1, 2, 0, 3}));
  EXPECT_EQ(list.entries[0].item_id, "b");
  EXPECT_EQ(list.group_id, "m");

  const std::vector<FeatureVector> mixed{vec("m", 0, {}), vec("n", 0, {})};
  expect_kind(ErrorKind::MixedGroups, [&] { rank(model, mixed); });
}

TEST(Rank, SortIsPermutationAndOrdered) {
  Gen gen(4);
  for (int round = 0; round < 100; ++round) {
    std::vector<RankedEntry> entries;
    for (int i = gen.integer(0, 20); i > 0; --i) {
      entries.push_back({"x", static_cast<double>(gen.integer(-3, 3)), entries.size()});
    }
    const auto sorted = sort_by_score("g", entries);
    ASSERT_EQ(sorted.entries.size(), entries.size());
    EXPECT_TRUE(std::is_permutation(sorted.entries.begin(), sorted.entries.end(),
                                    entries.begin(), entries.end()));
    for (std::size_t i = 1; i < sorted.entries.size(); ++i) {
      const auto& p = sorted.entries[i - 1];
      const auto& q = sorted.entries[i];
      EXPECT_TRUE(p.score > q.score || (p.score == q.score && p.index < q.index));
    }
  }
}

TEST(RankingModel, JsonRoundTrip) {
  const auto model = train(separable_fixture(2), 5, "abc", TrainOptions{});
  const auto back = RankingModel::from_json(model.to_json());
  EXPECT_EQ(back.weights, model.weights);
  EXPECT_EQ(back.space_checksum, "abc");
  EXPECT_EQ(back.kernel, "linear");
  EXPECT_EQ(back.train_report.violated_pairs, model.train_report.violated_pairs);
  EXPECT_EQ(back.to_json(), model.to_json());
  EXPECT_THROW(RankingModel::from_json("{\"format\": \"other\"}"), Error);
}
