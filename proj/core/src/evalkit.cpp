#include "trivia/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "trivia/error.hpp"

namespace trivia {

double precision_at_k(std::span<const int> labels, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  const std::size_t top = std::min(k, labels.size());
  const auto hits = std::count(labels.begin(), labels.begin() + top, 1);
  return static_cast<double>(hits) / static_cast<double>(k);
}

std::vector<double> recall_at_k(std::span<const int> labels,
                                std::size_t total_positives) {
  if (total_positives == 0) {
    throw Error(ErrorKind::ZeroPositives, "recall needs at least one positive");
  }
  if (static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1)) >
      total_positives) {
    throw Error(ErrorKind::InvalidArgument,
                "ranked list holds more positives than the pool");
  }
  std::vector<double> curve;
  curve.reserve(labels.size());
  std::size_t hits = 0;
  for (int label : labels) {
    if (label == 1) ++hits;
    curve.push_back(static_cast<double>(hits) /
                    static_cast<double>(total_positives));
  }
  return curve;
}

double dcg_at_k(std::span<const int> grades, std::size_t k) {
  double dcg = 0.0;
  const std::size_t top = std::min(k, grades.size());
  for (std::size_t i = 0; i < top; ++i) {
    if (grades[i] < 0) {
      throw Error(ErrorKind::InvalidArgument, "grades must be non-negative");
    }
    dcg += (std::exp2(grades[i]) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

double ndcg_at_k(std::span<const int> grades, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  std::vector<int> ideal(grades.begin(), grades.end());
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double idcg = dcg_at_k(ideal, k);
  if (idcg == 0.0) return 0.0;
  return dcg_at_k(grades, k) / idcg;
}

std::string_view kappa_band(double kappa) noexcept {
  if (kappa < 0.0) return "less than chance";
  if (kappa < 0.01) return "chance";
  if (kappa <= 0.20) return "slight";
  if (kappa <= 0.40) return "fair";
  if (kappa <= 0.60) return "moderate";
  if (kappa <= 0.80) return "substantial";
  return "almost perfect";
}

KappaResult kappa(const ConfusionTable& t) {
  if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0) {
    throw Error(ErrorKind::InvalidArgument, "confusion cells must be >= 0");
  }
  const std::int64_t n = t.n();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "empty confusion table");
  // Exact in integers: K = (n(a+d) - S) / (n^2 - S), S = n1*m1 + n0*m0.
  const std::int64_t chance = t.n1() * t.m1() + t.n0() * t.m0();
  const std::int64_t n2 = n * n;
  if (chance == n2) {
    throw Error(ErrorKind::DegenerateMarginals, "expected agreement is 1");
  }
  KappaResult r;
  const double dn = static_cast<double>(n);
  r.p_o = static_cast<double>(t.a + t.d) / dn;
  r.p_e = static_cast<double>(chance) / static_cast<double>(n2);
  r.kappa = static_cast<double>(n * (t.a + t.d) - chance) /
            static_cast<double>(n2 - chance);
  r.band = std::string(kappa_band(r.kappa));
  return r;
}

namespace {

double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || x < 0.0 || x > 1.0) {
    throw Error(ErrorKind::InvalidArgument, "incomplete beta out of domain");
  }
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed_p(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorKind::InvalidArgument, "df must be > 0");
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::LengthMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  const std::size_t n = a.size();
  if (n < 2) throw Error(ErrorKind::TooFewPairs, "need at least two pairs");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestResult r;
  if (sd == 0.0) {
    if (mean == 0.0) {
      r.t = 0.0;
      r.p_value = 1.0;
    } else {
      r.t = mean > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
      r.p_value = 0.0;
    }
  } else {
    r.t = mean / (sd / std::sqrt(static_cast<double>(n)));
    r.p_value = student_t_two_tailed_p(r.t, static_cast<double>(n - 1));
  }
  r.significant = r.p_value < 0.05;
  return r;
}

JudgedList judge(const RankedList& list, const std::map<std::string, int>& gold,
                 std::size_t total_positives) {
  JudgedList out{list.group_id, {}, {}, total_positives};
  for (const auto& e : list.entries) {
    auto it = gold.find(e.item_id);
    if (it == gold.end()) {
      throw Error(ErrorKind::MissingGold,
                  list.group_id + ": no gold label for " + e.item_id);
    }
    out.labels.push_back(it->second);
  }
  return out;
}

namespace {

void recompute_means(EvalReport& r) {
  r.mean_p_at_k = 0.0;
  r.mean_ndcg_at_k = 0.0;
  r.mean_recall_curve.clear();
  if (r.per_group.empty()) return;
  std::size_t longest = 0;
  std::size_t with_curve = 0;
  for (const auto& [group, m] : r.per_group) {
    r.mean_p_at_k += m.p_at_k;
    r.mean_ndcg_at_k += m.ndcg_at_k;
    longest = std::max(longest, m.recall_curve.size());
    if (!m.recall_curve.empty()) ++with_curve;
  }
  const double groups = static_cast<double>(r.per_group.size());
  r.mean_p_at_k /= groups;
  r.mean_ndcg_at_k /= groups;
  if (with_curve == 0) return;
  r.mean_recall_curve.assign(longest, 0.0);
  for (const auto& [group, m] : r.per_group) {
    if (m.recall_curve.empty()) continue;
    for (std::size_t i = 0; i < longest; ++i) {
      r.mean_recall_curve[i] +=
          i < m.recall_curve.size() ? m.recall_curve[i] : m.recall_curve.back();
    }
  }
  for (double& v : r.mean_recall_curve) v /= static_cast<double>(with_curve);
}

}  // namespace

EvalReport evaluate_run(std::span<const JudgedList> lists, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  EvalReport report;
  report.k = k;
  for (const auto& list : lists) {
    if (report.per_group.contains(list.group_id)) {
      throw Error(ErrorKind::InvalidArgument, "duplicate group " + list.group_id);
    }
    GroupMetrics m;
    m.p_at_k = precision_at_k(list.labels, k);
    if (list.total_positives > 0) {
      m.recall_curve = recall_at_k(list.labels, list.total_positives);
    }
    m.ndcg_at_k =
        ndcg_at_k(list.grades.empty() ? list.labels : list.grades, k);
    report.per_group.emplace(list.group_id, std::move(m));
  }
  recompute_means(report);
  return report;
}

EvalReport average_reports(std::span<const EvalReport> reports) {
  if (reports.empty()) {
    throw Error(ErrorKind::InvalidArgument, "nothing to average");
  }
  EvalReport out;
  out.k = reports.front().k;
  const double count = static_cast<double>(reports.size());
  for (const auto& r : reports) {
    if (r.per_group.size() != reports.front().per_group.size()) {
      throw Error(ErrorKind::LengthMismatch, "reports cover different groups");
    }
    for (const auto& [group, m] : r.per_group) {
      if (!reports.front().per_group.contains(group)) {
        throw Error(ErrorKind::LengthMismatch, "unexpected group " + group);
      }
      auto& acc = out.per_group[group];
      acc.p_at_k += m.p_at_k / count;
      acc.ndcg_at_k += m.ndcg_at_k / count;
      if (m.recall_curve.size() > acc.recall_curve.size()) {
        acc.recall_curve.resize(m.recall_curve.size(), 0.0);
      }
      for (std::size_t i = 0; i < m.recall_curve.size(); ++i) {
        acc.recall_curve[i] += m.recall_curve[i] / count;
      }
    }
  }
  recompute_means(out);
  return out;
}

TTestResult compare_runs(const EvalReport& a, const EvalReport& b) {
  std::vector<double> pa;
  std::vector<double> pb;
  for (const auto& [group, m] : a.per_group) {
    auto it = b.per_group.find(group);
    if (it == b.per_group.end()) {
      throw Error(ErrorKind::LengthMismatch, "group " + group + " missing");
    }
    pa.push_back(m.p_at_k);
    pb.push_back(it->second.p_at_k);
  }
  if (a.per_group.size() != b.per_group.size()) {
    throw Error(ErrorKind::LengthMismatch, "runs cover different groups");
  }
  return paired_t_test(pa, pb);
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["k"] = report.k;
  auto& groups = j["per_group"] = nlohmann::ordered_json::object();
  for (const auto& [group, m] : report.per_group) {
    groups[group] = {{"p_at_k", m.p_at_k},
                     {"recall_curve", m.recall_curve},
                     {"ndcg_at_k", m.ndcg_at_k}};
  }
  j["means"] = {{"p_at_k", report.mean_p_at_k},
                {"recall_curve", report.mean_recall_curve},
                {"ndcg_at_k", report.mean_ndcg_at_k}};
  if (report.significance) {
    j["significance"] = {{"t_stat", report.significance->t},
                         {"p_value", report.significance->p_value},
                         {"significant_at_0_05", report.significance->significant}};
  }
  return j.dump(2);
}

}  // namespace trivia
