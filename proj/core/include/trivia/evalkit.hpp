#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trivia/ranker.hpp"

namespace trivia {

/// (# of 1s among the first min(k, n)) / k. Throws InvalidArgument for k < 1.
double precision_at_k(std::span<const int> labels, std::size_t k);

/// curve[k-1] = (# of 1s in the first k) / total_positives for k = 1..n.
/// Throws ZeroPositives, InvalidArgument when the list holds more positives
/// than total_positives.
std::vector<double> recall_at_k(std::span<const int> labels,
                                std::size_t total_positives);

/// Gain 2^g - 1, discount log2(i + 1). Returns 0 when the ideal DCG is 0.
double dcg_at_k(std::span<const int> grades, std::size_t k);
double ndcg_at_k(std::span<const int> grades, std::size_t k);

/// Two observers, binary judgments. a = both say 1, b = first 1 / second 0,
/// c = first 0 / second 1, d = both say 0.
struct ConfusionTable {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;

  std::int64_t m1() const { return a + b; }
  std::int64_t m0() const { return c + d; }
  std::int64_t n1() const { return a + c; }
  std::int64_t n0() const { return b + d; }
  std::int64_t n() const { return a + b + c + d; }
};

struct KappaResult {
  double p_o = 0.0;
  double p_e = 0.0;
  double kappa = 0.0;
  std::string band;
};

/// "less than chance" below 0, "chance" on [0, 0.01), then slight / fair /
/// moderate / substantial / almost perfect with upper edges 0.20, 0.40,
/// 0.60, 0.80 included in the lower band.
std::string_view kappa_band(double kappa) noexcept;

/// Throws InvalidArgument for negative cells or n = 0, DegenerateMarginals
/// when expected agreement is 1.
KappaResult kappa(const ConfusionTable& table);

/// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);
/// P(|T| >= |t|) for Student's t with df degrees of freedom.
double student_t_two_tailed_p(double t, double df);

struct TTestResult {
  double t = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

/// Paired two-tailed t-test on a - b at alpha = 0.05. With zero spread the
/// p-value is 0 for a nonzero mean difference and 1 otherwise. Throws
/// LengthMismatch, TooFewPairs.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

/// One ranked list with gold judgments, in ranked order.
struct JudgedList {
  std::string group_id;
  std::vector<int> labels;
  /// Graded relevance for NDCG; the labels are used when empty.
  std::vector<int> grades;
  /// Positives in the whole candidate pool, retrieved or not.
  std::size_t total_positives = 0;
};

/// Attaches gold labels to a ranked list. Throws MissingGold for an entry
/// without a label.
JudgedList judge(const RankedList& list, const std::map<std::string, int>& gold,
                 std::size_t total_positives);

struct GroupMetrics {
  double p_at_k = 0.0;
  /// Empty for a group without positives.
  std::vector<double> recall_curve;
  double ndcg_at_k = 0.0;
};

struct EvalReport {
  std::size_t k = 10;
  std::map<std::string, GroupMetrics> per_group;
  double mean_p_at_k = 0.0;
  /// Element-wise mean over groups with positives; shorter curves are
  /// extended with their last value.
  std::vector<double> mean_recall_curve;
  double mean_ndcg_at_k = 0.0;
  std::optional<TTestResult> significance;
};

/// Throws MissingGold for a list whose labels are absent or do not cover
/// its entries, InvalidArgument for duplicate groups.
EvalReport evaluate_run(std::span<const JudgedList> lists, std::size_t k);

/// Element-wise mean of reports over the same groups (e.g. several seeds).
EvalReport average_reports(std::span<const EvalReport> reports);

/// Paired t-test of per-group P@k, a versus b. Throws LengthMismatch when
/// the group sets differ.
TTestResult compare_runs(const EvalReport& a, const EvalReport& b);

std::string report_to_json(const EvalReport& report);

}  // namespace trivia
