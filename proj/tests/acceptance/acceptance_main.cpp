#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "trivia/corpus.hpp"
#include "trivia/error.hpp"
#include "trivia/evalkit.hpp"
#include "trivia/features.hpp"
#include "trivia/grading.hpp"
#include "trivia/pipeline.hpp"
#include "trivia/ranker.hpp"
#include "trivia/readability.hpp"
#include "trivia/selection.hpp"

using namespace trivia;
namespace fs = std::filesystem;

namespace {

constexpr double kFogTolerance = 1e-9;
constexpr double kKappaTolerance = 1e-12;
constexpr double kNdcgTolerance = 1e-12;
constexpr double kCriticalP = 0.050;
constexpr double kCriticalTolerance = 0.002;
constexpr double kGradingSeconds = 1.0;
constexpr double kTrainerSeconds = 5.0;
constexpr double kPipelineSeconds = 10.0;

const fs::path kData = TRIVIA_TEST_DATA;
const fs::path kMini = TRIVIA_MINI_CORPUS;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Outcome grading_oracle() {
  Outcome out;
  std::mt19937_64 rng(1);
  std::vector<TriviaRecord> records;
  // Boundary cases first: Y around 5 and 100, LR at and just above 0.6.
  const std::vector<std::pair<int, int>> edges{{0, 4},  {4, 4},   {0, 5},   {3, 5},   {4, 5},
                                               {5, 5},  {60, 99}, {61, 99}, {60, 100}, {61, 100},
                                               {99, 99}, {100, 100}, {6, 10}, {7, 10}, {3, 6}};
  for (auto [x, y] : edges) records.push_back({"e", "t", x, y, ""});
  while (records.size() < 200) {
    const std::int64_t y = std::uniform_int_distribution<std::int64_t>(1, 150)(rng);
    const std::int64_t x = std::uniform_int_distribution<std::int64_t>(0, y)(rng);
    records.push_back({"e", "t" + std::to_string(records.size()), x, y, ""});
  }

  const auto start = std::chrono::steady_clock::now();
  const GradingConfig cfg;
  for (const auto& r : records) {
    out.check(likeness_ratio(r) == static_cast<double>(r.votes_interesting) /
                                       static_cast<double>(r.votes_total),
              "likeness_ratio differs");
  }
  const auto kept = apply_support_filter(records, cfg);
  std::vector<TriviaRecord> expected_kept;
  for (const auto& r : records) {
    if (oracle::support_keeps({r.votes_interesting, r.votes_total})) expected_kept.push_back(r);
  }
  out.check(kept == expected_kept, "support filter differs");
  const auto graded = assign_grades(kept, cfg);
  std::vector<oracle::Votes> votes;
  for (const auto& r : kept) votes.push_back({r.votes_interesting, r.votes_total});
  const auto expected = oracle::grades(votes);
  out.check(graded.size() == expected.size(), "grade count differs");
  for (std::size_t i = 0; i < graded.size() && i < expected.size(); ++i) {
    out.check(graded[i].grade == expected[i], "grade differs at record " + std::to_string(i));
  }
  const double elapsed = seconds_since(start);
  out.check(elapsed < kGradingSeconds, "took " + fmt(elapsed) + " s");
  if (out.pass) {
    out.detail = std::to_string(records.size()) + " records, " + std::to_string(kept.size()) +
                 " kept, " + fmt(elapsed) + " s";
  }
  return out;
}

Outcome fog_oracle() {
  Outcome out;
  std::ifstream in(kData / "fog_fixture.jsonl");
  std::vector<std::vector<std::string>> corpus;
  std::size_t words = 0;
  std::size_t complex = 0;
  std::string line;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    const auto tokens = j.at("tokens").get<std::vector<std::string>>();
    const auto syllables = j.at("syllables").get<std::vector<int>>();
    std::size_t w = 0;
    std::size_t c = 0;
    for (int s : syllables) {
      if (s == 0) continue;
      ++w;
      if (s > 2) ++c;
    }
    const double by_hand = 0.4 * (static_cast<double>(w) + 100.0 * static_cast<double>(c) /
                                                                static_cast<double>(w));
    const std::vector<std::vector<std::string>> one{tokens};
    const double got = fog_index(one).score;
    out.check(std::abs(got - by_hand) <= kFogTolerance,
              "sentence " + std::to_string(corpus.size() + 1) + ": " + fmt(got) + " vs " +
                  fmt(by_hand));
    out.check(std::abs(got - oracle::fog(one)) <= kFogTolerance, "separate counter disagrees");
    words += w;
    complex += c;
    corpus.push_back(tokens);
  }
  out.check(corpus.size() == 50, "fixture has " + std::to_string(corpus.size()) + " sentences");
  const double whole = 0.4 * (static_cast<double>(words) / static_cast<double>(corpus.size()) +
                              100.0 * static_cast<double>(complex) / static_cast<double>(words));
  const double got = fog_index(corpus).score;
  out.check(std::abs(got - whole) <= kFogTolerance, "corpus score " + fmt(got) + " vs " + fmt(whole));
  out.check(fog_bin(std::nextafter(7.0, 0.0)) == FogBin::low, "below 7 is not LOW");
  out.check(fog_bin(7.0) == FogBin::mid, "7 is not MID");
  out.check(fog_bin(std::nextafter(15.0, 0.0)) == FogBin::mid, "below 15 is not MID");
  out.check(fog_bin(15.0) == FogBin::high, "15 is not HIGH");
  if (out.pass) out.detail = "50 sentences, corpus FOG " + fmt(got);
  return out;
}

Outcome pair_equivalence() {
  Outcome out;
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    const int n = std::uniform_int_distribution<int>(0, 15)(rng);
    std::vector<FeatureVector> items;
    std::vector<std::string> groups;
    std::vector<int> grades;
    for (int i = 0; i < n; ++i) {
      FeatureVector v;
      v.group_id = "q" + std::to_string(std::uniform_int_distribution<int>(0, 2)(rng));
      v.grade = std::uniform_int_distribution<int>(0, 4)(rng);
      groups.push_back(v.group_id);
      grades.push_back(*v.grade);
      items.push_back(v);
    }
    std::set<std::tuple<std::string, std::size_t, std::size_t>> got;
    const auto pairs = build_pairs(items);
    for (const auto& p : pairs) got.insert({p.group_id, p.higher, p.lower});
    out.check(got.size() == pairs.size(), "duplicate pair in round " + std::to_string(round));
    out.check(got == oracle::pairs(groups, grades), "pair set differs in round " + std::to_string(round));
  }
  if (out.pass) out.detail = "100 instances";
  return out;
}

// Four groups of five; feature 0 is the planted gold feature, 1 + g is noise.
std::vector<FeatureVector> separable_groups(std::uint64_t seed, const std::string& prefix) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(0.1, 1.0);
  std::vector<FeatureVector> items;
  for (int g = 0; g < 4; ++g) {
    for (int grade = 0; grade < 5; ++grade) {
      FeatureVector v;
      v.group_id = prefix + std::to_string(g);
      v.grade = grade;
      v.item_id = v.group_id + "_" + std::to_string(grade);
      v.entries = {{0, 0.5 * grade}, {static_cast<std::uint32_t>(1 + g), noise(rng)}};
      items.push_back(v);
    }
  }
  return items;
}

Outcome trainer_convergence() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const auto items = separable_groups(11, "g");
  TrainOptions opts;
  opts.c = 17.0;
  opts.epsilon = 0.21;
  opts.max_iter = 1000;
  const auto model = train(items, 5, "fixture", opts);
  const auto& r = model.train_report;
  out.check(r.violated_pairs == 0, std::to_string(r.violated_pairs) + " violated pairs");
  out.check(r.iterations <= 1000, "ran " + std::to_string(r.iterations) + " epochs");
  for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
    out.check(r.objective_trace[i] <= r.objective_trace[i - 1],
              "objective rose at epoch " + std::to_string(i + 1));
  }
  const auto held_out = separable_groups(99, "h");
  double worst = 1.0;
  for (int g = 0; g < 4; ++g) {
    const std::span<const FeatureVector> group(held_out.data() + 5 * g, 5);
    const auto list = rank(model, group);
    std::vector<int> grades;
    for (const auto& e : list.entries) grades.push_back(*group[e.index].grade);
    worst = std::min(worst, ndcg_at_k(grades, 10));
  }
  out.check(std::abs(worst - 1.0) <= kNdcgTolerance, "held-out NDCG@10 " + fmt(worst));
  const double elapsed = seconds_since(start);
  out.check(elapsed < kTrainerSeconds, "took " + fmt(elapsed) + " s");
  if (out.pass) {
    out.detail = std::to_string(r.pair_count) + " pairs, " + std::to_string(r.iterations) +
                 " epochs, held-out NDCG@10 " + fmt(worst) + ", " + fmt(elapsed) + " s";
  }
  return out;
}

Outcome metric_oracles() {
  Outcome out;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> grade(0, 4);
  for (int round = 0; round < 200; ++round) {
    std::vector<int> g(std::uniform_int_distribution<std::size_t>(1, 12)(rng));
    for (auto& x : g) x = grade(rng);
    std::sort(g.rbegin(), g.rend());
    if (std::count(g.begin(), g.end(), 0) == static_cast<long>(g.size())) continue;
    out.check(std::abs(ndcg_at_k(g, 10) - 1.0) <= kNdcgTolerance, "descending list below 1");
  }
  for (std::size_t len = 1; len <= 6; ++len) {
    for (int round = 0; round < 40; ++round) {
      std::vector<int> g(len);
      for (auto& x : g) x = grade(rng);
      for (std::size_t k : {std::size_t{1}, std::size_t{3}, std::size_t{10}}) {
        auto ideal = g;
        std::sort(ideal.rbegin(), ideal.rend());
        const double idcg = dcg_at_k(ideal, k);
        out.check(std::abs(idcg - oracle::best_dcg(g, k)) <= kNdcgTolerance,
                  "IDCG differs for length " + std::to_string(len));
        const double best = oracle::best_dcg(g, k);
        const double expected = best == 0.0 ? 0.0 : oracle::dcg(g, k) / best;
        out.check(std::abs(ndcg_at_k(g, k) - expected) <= kNdcgTolerance, "NDCG differs");
      }
    }
  }
  int tables = 0;
  std::uniform_int_distribution<std::int64_t> cell(0, 50);
  while (tables < 20) {
    const ConfusionTable t{cell(rng), cell(rng), cell(rng), cell(rng)};
    const auto [po, pe, k] = oracle::kappa(static_cast<double>(t.a), static_cast<double>(t.b),
                                           static_cast<double>(t.c), static_cast<double>(t.d));
    if (t.n() == 0 || pe == 1.0) continue;
    const auto r = kappa(t);
    out.check(std::abs(r.p_o - po) <= kKappaTolerance, "p_o differs");
    out.check(std::abs(r.p_e - pe) <= kKappaTolerance, "p_e differs");
    out.check(std::abs(r.kappa - k) <= kKappaTolerance, "kappa differs");
    ++tables;
  }
  out.check(kappa_band(0.618) == "substantial", "0.618 band is " + std::string(kappa_band(0.618)));
  const double p = student_t_two_tailed_p(2.262, 9);
  out.check(std::abs(p - kCriticalP) <= kCriticalTolerance, "t=2.262 df=9 gives p=" + fmt(p));
  // A paired sample whose statistic is 2.262 with df = 9.
  std::vector<double> a(10);
  std::vector<double> b(10, 0.0);
  const double base[] = {1, -1, 1, -1, 1, -1, 1, -1, 1, -1};
  const double sd = std::sqrt(10.0 / 9.0);
  for (int i = 0; i < 10; ++i) a[i] = base[i] + 2.262 * sd / std::sqrt(10.0);
  const auto t = paired_t_test(a, b);
  out.check(std::abs(t.t - 2.262) <= 1e-9, "paired t " + fmt(t.t));
  out.check(std::abs(t.p_value - kCriticalP) <= kCriticalTolerance,
            "paired p " + fmt(t.p_value));
  if (out.pass) out.detail = "20 kappa tables, p(2.262, 9) = " + fmt(p);
  return out;
}

Outcome selection_examples() {
  Outcome out;
  const auto kb = load_knowledge_base(kData / "fixture_kb.jsonl");
  const auto sentences = load_annotations(kData / "selection_examples.jsonl");
  const auto cfg = SelectionConfig::movie_defaults();
  const std::map<std::string, bool> expected{{"reminds_me", false},
                                             {"hanks_signed", true},
                                             {"he_wanted", false}};
  int seen = 0;
  for (const auto& s : sentences) {
    auto it = expected.find(s.sentence_id);
    if (it == expected.end()) continue;
    ++seen;
    const bool kept = is_self_contained(s, kb.at(s.entity_id), cfg);
    out.check(kept == it->second, s.sentence_id + (kept ? " kept" : " dropped"));
  }
  out.check(seen == 3, "found " + std::to_string(seen) + " of 3 sentences");
  if (out.pass) out.detail = "reminds_me dropped, hanks_signed kept, he_wanted dropped";
  return out;
}

Outcome entity_linking() {
  Outcome out;
  const auto kb = load_knowledge_base(kData / "fixture_kb.jsonl");
  const auto sentences = load_annotations(kData / "entity_link_example.jsonl");
  out.check(sentences.size() == 1, "fixture should hold one sentence");
  if (!out.pass) return out;
  const auto f = entity_features(sentences[0], kb.at("night_orchard"));
  for (auto name : {"entity_Director", "entity_Writer", "entity_unlinked_PERSON"}) {
    out.check(f.contains(name), std::string("missing ") + name);
  }
  if (out.pass) out.detail = std::to_string(f.size()) + " entity features";
  return out;
}

RunConfig mini_config(const fs::path& out_dir) {
  RunConfig cfg;
  cfg.trivia = kMini / "trivia.jsonl";
  cfg.annotations = kMini / "annotations.jsonl";
  cfg.pages = kMini / "pages.jsonl";
  cfg.kb = kMini / "kb.jsonl";
  cfg.output_dir = out_dir;
  cfg.blocks = BlockSet::parse("U+L+E");
  cfg.ablations = {BlockSet::parse("U")};
  cfg.baselines = {BaselineKind::random};
  cfg.baseline_runs = 5;
  cfg.k = 10;
  return cfg;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("trivia_acceptance_" + name);
  fs::remove_all(dir);
  return dir;
}

Outcome mini_corpus_ordering() {
  Outcome out;
  const auto dir = scratch("ordering");
  const auto start = std::chrono::steady_clock::now();
  const auto result = run_all(mini_config(dir));
  const double elapsed = seconds_since(start);
  std::map<std::string, double> p10;
  std::size_t random_runs = 0;
  for (const auto& s : result.systems) {
    if (s.report) p10[s.name] = s.report->mean_p_at_k;
    if (s.name == "random") random_runs = s.runs.size();
  }
  for (auto name : {"wtm[U+L+E]", "wtm[U]", "random"}) {
    out.check(p10.contains(name), std::string("no report for ") + name);
  }
  if (!out.pass) return out;
  const double full = p10["wtm[U+L+E]"];
  const double unigram = p10["wtm[U]"];
  const double random = p10["random"];
  out.check(random_runs == 5, "random ran " + std::to_string(random_runs) + " seeds");
  out.check(full >= unigram, "U+L+E " + fmt(full) + " < U " + fmt(unigram));
  out.check(unigram >= random, "U " + fmt(unigram) + " < random " + fmt(random));
  out.check(elapsed < kPipelineSeconds, "took " + fmt(elapsed) + " s");
  if (out.pass) {
    out.detail = "P@10 U+L+E " + fmt(full) + " >= U " + fmt(unigram) + " >= random " +
                 fmt(random) + ", " + fmt(elapsed) + " s";
  }
  fs::remove_all(dir);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome out;
  std::vector<fs::path> dirs{scratch("det_a"), scratch("det_b")};
  for (const auto& dir : dirs) {
    std::string cmd = std::string("\"") + TRIVIA_CLI + "\" run-all" + " --trivia \"" +
                      (kMini / "trivia.jsonl").string() + "\" --annotations \"" +
                      (kMini / "annotations.jsonl").string() + "\" --pages \"" +
                      (kMini / "pages.jsonl").string() + "\" --kb \"" +
                      (kMini / "kb.jsonl").string() + "\" --out-dir \"" + dir.string() +
                      "\" --seed 7 --baseline random --baseline classifier > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    out.check(rc == 0, "run-all exited with " + std::to_string(rc));
  }
  if (!out.pass) return out;
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    const auto name = entry.path().filename().string();
    const bool relevant = name == "model.json" || name.starts_with("ranked");
    if (!relevant) continue;
    out.check(fs::exists(dirs[1] / name), name + " missing in second run");
    if (!out.pass) break;
    const auto first = slurp(entry.path());
    out.check(!first.empty(), name + " is empty");
    out.check(first == slurp(dirs[1] / name), name + " differs");
    ++compared;
  }
  out.check(fs::exists(dirs[0] / "model.json") && fs::exists(dirs[0] / "ranked.tsv"),
            "model.json or ranked.tsv not written");
  if (out.pass) out.detail = std::to_string(compared) + " files byte-identical";
  for (const auto& dir : dirs) fs::remove_all(dir);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"grading oracle", grading_oracle},
      {"FOG oracle", fog_oracle},
      {"pair generation", pair_equivalence},
      {"trainer convergence", trainer_convergence},
      {"metric oracles", metric_oracles},
      {"candidate selection examples", selection_examples},
      {"entity linking example", entity_linking},
      {"mini-corpus ordering", mini_corpus_ordering},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", result.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), result.detail.c_str());
    failures += !result.pass;
  }
  return failures == 0 ? 0 : 1;
}
