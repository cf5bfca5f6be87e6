#include <benchmark/benchmark.h>

#include <random>

#include "trivia/corpus.hpp"
#include "trivia/evalkit.hpp"
#include "trivia/features.hpp"
#include "trivia/ranker.hpp"

using namespace trivia;

namespace {

std::vector<FeatureVector> synthetic_items(int groups, int per_group, std::uint32_t dim) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::uint32_t> col(1, dim - 1);
  std::vector<FeatureVector> items;
  for (int g = 0; g < groups; ++g) {
    for (int i = 0; i < per_group; ++i) {
      FeatureVector v;
      v.group_id = "g" + std::to_string(g);
      v.grade = i % 5;
      std::map<std::uint32_t, double> cells{{0, 0.2 * (i % 5) + 0.1 * u(rng)}};
      for (int k = 0; k < 20; ++k) cells[col(rng)] = u(rng);
      v.entries.assign(cells.begin(), cells.end());
      items.push_back(std::move(v));
    }
  }
  return items;
}

TrainingItem sentence_item(int n, std::mt19937_64& rng) {
  static const std::vector<std::string> vocab{
      "the", "film", "director", "improvised", "highest", "grossing", "actor",
      "scene", "although", "studio", "budget", "million", "award", "script"};
  AnnotatedSentence s;
  s.entity_id = "m";
  s.sentence_id = "s" + std::to_string(n);
  for (int i = 0; i < 18; ++i) {
    Token t;
    t.text = vocab[rng() % vocab.size()];
    t.lemma = t.text;
    t.pos = t.text == "highest" ? "JJS" : "NN";
    t.head = i == 0 ? kRootHead : 0;
    t.deprel = i == 0 ? "root" : "dep";
    s.tokens.push_back(t);
  }
  EntityRecord e;
  e.entity_id = "m";
  e.display_name = "M";
  e.aliases = {"M"};
  return {s, e, static_cast<int>(rng() % 5)};
}

void BM_Train(benchmark::State& state) {
  const auto items = synthetic_items(static_cast<int>(state.range(0)), 20, 500);
  for (auto _ : state) {
    benchmark::DoNotOptimize(train(items, 500, "bench", TrainOptions{}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(items.size()));
}
BENCHMARK(BM_Train)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Featurize(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<TrainingItem> train_items;
  for (int i = 0; i < 200; ++i) train_items.push_back(sentence_item(i, rng));
  const auto lex = Lexicons::defaults();
  const auto space = fit_feature_space(train_items, lex);
  for (auto _ : state) {
    for (const auto& item : train_items) {
      benchmark::DoNotOptimize(featurize_item(item.sentence, item.entity, space, lex));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(train_items.size()));
}
BENCHMARK(BM_Featurize)->Unit(benchmark::kMillisecond);

void BM_Ndcg(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<int> grades(static_cast<std::size_t>(state.range(0)));
  for (auto& g : grades) g = static_cast<int>(rng() % 5);
  for (auto _ : state) benchmark::DoNotOptimize(ndcg_at_k(grades, 10));
}
BENCHMARK(BM_Ndcg)->Arg(10)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
