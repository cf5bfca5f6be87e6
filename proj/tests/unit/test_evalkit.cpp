#include <gtest/gtest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include "json.hpp"

#include "oracles.hpp"
#include "support.hpp"
#include "trivia/error.hpp"
#include "trivia/evalkit.hpp"

using namespace trivia;
using trivia::testing::Gen;

namespace {

void expect_kind(ErrorKind kind, const auto& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

}  // namespace

TEST(Precision, Examples) {
  const std::vector<int> labels{1, 0, 1, 1, 0};
  EXPECT_DOUBLE_EQ(precision_at_k(labels, 3), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(precision_at_k(labels, 10), 0.3);
  EXPECT_DOUBLE_EQ(precision_at_k(std::vector<int>{}, 10), 0.0);
  expect_kind(ErrorKind::InvalidArgument, [&] { precision_at_k(labels, 0); });
}

TEST(Recall, CurveAndErrors) {
  const std::vector<int> labels{1, 0, 1, 1, 0};
  EXPECT_EQ(recall_at_k(labels, 4), (std::vector<double>{0.25, 0.25, 0.5, 0.75, 0.75}));
  expect_kind(ErrorKind::ZeroPositives, [&] { recall_at_k(labels, 0); });
  expect_kind(ErrorKind::InvalidArgument, [&] { recall_at_k(labels, 2); });
}

TEST(Recall, MonotoneAndBounded) {
  Gen gen(12);
  for (int round = 0; round < 200; ++round) {
    std::vector<int> labels;
    for (int i = gen.integer(0, 20); i > 0; --i) labels.push_back(gen.coin() ? 1 : 0);
    const auto pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    const auto curve = recall_at_k(labels, pos + static_cast<std::size_t>(gen.integer(1, 3)));
    for (std::size_t i = 0; i < curve.size(); ++i) {
      EXPECT_GE(curve[i], 0.0);
      EXPECT_LE(curve[i], 1.0);
      if (i > 0) EXPECT_GE(curve[i], curve[i - 1]);
    }
  }
}

TEST(Ndcg, WorkedExample) {
  const std::vector<int> grades{1, 2, 3};
  EXPECT_NEAR(ndcg_at_k(grades, 10), 0.6806, 1e-4);
  EXPECT_NEAR(dcg_at_k(grades, 10), oracle::dcg({1, 2, 3}, 10), 1e-12);
  EXPECT_DOUBLE_EQ(ndcg_at_k(std::vector<int>{3, 2, 1}, 10), 1.0);
  EXPECT_EQ(ndcg_at_k(std::vector<int>{0, 0}, 10), 0.0);
  EXPECT_EQ(ndcg_at_k(std::vector<int>{}, 10), 0.0);
}

TEST(Ndcg, MatchesPermutationOracle) {
  Gen gen(6);
  for (int round = 0; round < 300; ++round) {
    std::vector<int> grades;
    for (int i = gen.integer(1, 7); i > 0; --i) grades.push_back(gen.integer(0, 4));
    const auto k = static_cast<std::size_t>(gen.integer(1, 10));
    const double best = oracle::best_dcg(grades, k);
    const double expected = best == 0.0 ? 0.0 : oracle::dcg(grades, k) / best;
    const double got = ndcg_at_k(grades, k);
    EXPECT_NEAR(got, expected, 1e-12);
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0 + 1e-12);
  }
}

TEST(Kappa, WorkedExampleAndBands) {
  const auto r = kappa({40, 10, 10, 40});
  EXPECT_NEAR(r.p_o, 0.8, 1e-12);
  EXPECT_NEAR(r.p_e, 0.5, 1e-12);
  EXPECT_NEAR(r.kappa, 0.6, 1e-12);
  EXPECT_EQ(r.band, "moderate");
  EXPECT_EQ(kappa_band(0.618), "substantial");
  EXPECT_EQ(kappa_band(-0.1), "less than chance");
  EXPECT_EQ(kappa_band(0.0), "chance");
  EXPECT_EQ(kappa_band(0.01), "slight");
  EXPECT_EQ(kappa_band(0.20), "slight");
  EXPECT_EQ(kappa_band(0.40), "fair");
  EXPECT_EQ(kappa_band(0.80), "substantial");
  EXPECT_EQ(kappa_band(0.81), "almost perfect");
  EXPECT_EQ(kappa_band(1.0), "almost perfect");
}

TEST(Kappa, Errors) {
  expect_kind(ErrorKind::InvalidArgument, [] { kappa({0, 0, 0, 0}); });
  expect_kind(ErrorKind::InvalidArgument, [] { kappa({-1, 2, 3, 4}); });
  expect_kind(ErrorKind::DegenerateMarginals, [] { kappa({5, 0, 0, 0}); });
}

TEST(Kappa, MatchesOracleOnRandomTables) {
  Gen gen(31);
  int checked = 0;
  while (checked < 500) {
    const ConfusionTable t{gen.integer(0, 60), gen.integer(0, 60), gen.integer(0, 60),
                           gen.integer(0, 60)};
    if (t.n() == 0) continue;
    const auto [po, pe, k] = oracle::kappa(static_cast<double>(t.a), static_cast<double>(t.b),
                                           static_cast<double>(t.c), static_cast<double>(t.d));
    if (std::abs(1.0 - pe) < 1e-12) continue;
    const auto r = kappa(t);
    EXPECT_NEAR(r.p_o, po, 1e-12);
    EXPECT_NEAR(r.p_e, pe, 1e-12);
    EXPECT_NEAR(r.kappa, k, 1e-12);
    EXPECT_LE(r.kappa, 1.0 + 1e-12);
    EXPECT_EQ(r.band, kappa_band(r.kappa));
    ++checked;
  }
}

TEST(IncompleteBeta, MatchesBoost) {
  Gen gen(2);
  for (int round = 0; round < 500; ++round) {
    const double a = gen.real(0.1, 30.0);
    const double b = gen.real(0.1, 30.0);
    const double x = gen.real(0.0, 1.0);
    EXPECT_NEAR(regularized_incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-10)
        << a << " " << b << " " << x;
  }
  EXPECT_EQ(regularized_incomplete_beta(2, 3, 0.0), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(2, 3, 1.0), 1.0);
}

TEST(TTest, CriticalValue) {
  EXPECT_NEAR(student_t_two_tailed_p(2.262, 9), 0.05, 0.002);
  EXPECT_NEAR(student_t_two_tailed_p(0.0, 9), 1.0, 1e-12);
  EXPECT_NEAR(student_t_two_tailed_p(-2.262, 9), student_t_two_tailed_p(2.262, 9), 1e-15);
}

TEST(TTest, PairedExampleAndSymmetry) {
  const std::vector<double> a{0.5, 0.6, 0.7, 0.4, 0.8};
  const std::vector<double> b{0.4, 0.6, 0.5, 0.3, 0.6};
  // differences 0.1 0 0.2 0.1 0.2: mean 0.12, sd sqrt(0.007)
  const auto r = paired_t_test(a, b);
  EXPECT_NEAR(r.t, 0.12 / (std::sqrt(0.007) / std::sqrt(5.0)), 1e-9);
  const auto s = paired_t_test(b, a);
  EXPECT_NEAR(s.t, -r.t, 1e-12);
  EXPECT_NEAR(s.p_value, r.p_value, 1e-12);
  EXPECT_EQ(r.significant, r.p_value < 0.05);
}

TEST(TTest, DegenerateInputs) {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> shifted{0, 1, 2};
  EXPECT_EQ(paired_t_test(a, a).p_value, 1.0);
  EXPECT_FALSE(paired_t_test(a, a).significant);
  EXPECT_EQ(paired_t_test(a, shifted).p_value, 0.0);
  EXPECT_TRUE(paired_t_test(a, shifted).significant);
  const std::vector<double> one{1};
  expect_kind(ErrorKind::TooFewPairs, [&] { paired_t_test(one, one); });
  expect_kind(ErrorKind::LengthMismatch, [&] { paired_t_test(a, one); });
}

TEST(EvaluateRun, AggregatesGroups) {
  std::vector<JudgedList> lists(2);
  lists[0] = {"a", {1, 0, 1}, {}, 2};
  lists[1] = {"b", {0, 0}, {}, 0};
  const auto report = evaluate_run(lists, 2);
  EXPECT_NEAR(report.per_group.at("a").p_at_k, 0.5, 1e-12);
  EXPECT_TRUE(report.per_group.at("b").recall_curve.empty());
  EXPECT_NEAR(report.mean_p_at_k, 0.25, 1e-12);
  EXPECT_EQ(report.mean_recall_curve, (std::vector<double>{0.5, 0.5, 1.0}));
  EXPECT_NEAR(report.mean_ndcg_at_k, ndcg_at_k(std::vector<int>{1, 0, 1}, 2) / 2.0, 1e-12);
  const auto json = nlohmann::json::parse(report_to_json(report));
  EXPECT_EQ(json["k"], 2);

  std::vector<JudgedList> dup{lists[0], lists[0]};
  expect_kind(ErrorKind::InvalidArgument, [&] { evaluate_run(dup, 2); });
}

TEST(Judge, AttachesGoldAndRejectsUnknown) {
  RankedList list{"m", {{"x", 1.0, 0}, {"y", 0.5, 1}}};
  const auto judged = judge(list, {{"x", 0}, {"y", 1}}, 3);
  EXPECT_EQ(judged.labels, (std::vector<int>{0, 1}));
  EXPECT_EQ(judged.total_positives, 3u);
  expect_kind(ErrorKind::MissingGold, [&] { judge(list, {{"x", 0}}, 1); });
}

TEST(CompareRuns, PairsByGroup) {
  std::vector<JudgedList> good{{"a", {1, 1}, {}, 2}, {"b", {1, 0}, {}, 1}, {"c", {1, 1}, {}, 2}};
  std::vector<JudgedList> bad{{"a", {0, 1}, {}, 2}, {"b", {0, 0}, {}, 1}, {"c", {0, 0}, {}, 2}};
  const auto r = compare_runs(evaluate_run(good, 2), evaluate_run(bad, 2));
  EXPECT_GT(r.t, 0.0);
  std::vector<JudgedList> other{{"z", {1}, {}, 1}, {"b", {1}, {}, 1}, {"c", {1}, {}, 1}};
  expect_kind(ErrorKind::LengthMismatch,
              [&] { compare_runs(evaluate_run(good, 2), evaluate_run(other, 2)); });
}

TEST(AverageReports, ElementWiseMean) {
  std::vector<JudgedList> one{{"a", {1, 0}, {}, 1}};
  std::vector<JudgedList> two{{"a", {0, 1}, {}, 1}};
  const std::vector<EvalReport> reports{evaluate_run(one, 1), evaluate_run(two, 1)};
  const auto avg = average_reports(reports);
  EXPECT_NEAR(avg.mean_p_at_k, 0.5, 1e-12);
  EXPECT_NEAR(avg.per_group.at("a").p_at_k, 0.5, 1e-12);
  EXPECT_EQ(avg.mean_recall_curve, (std::vector<double>{0.5, 1.0}));
}
