#include "trivia/baselines.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "trivia/error.hpp"
#include "trivia/random.hpp"
#include "trivia/solver.hpp"

namespace trivia {

RankedList baseline_random(std::string group_id,
                           std::span<const std::string> item_ids, std::size_t k,
                           std::uint64_t seed) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  std::vector<std::size_t> order(item_ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  order.resize(std::min(k, order.size()));
  RankedList list{std::move(group_id), {}};
  for (std::size_t i : order) list.entries.push_back({item_ids[i], 0.0, i});
  return list;
}

std::string_view to_string(SupposMode mode) noexcept {
  switch (mode) {
    case SupposMode::best: return "best";
    case SupposMode::worst: return "worst";
    case SupposMode::random: return "random";
  }
  return "?";
}

int superlative_count(const AnnotatedSentence& sentence, const Lexicons& lex) {
  return static_cast<int>(std::count_if(
      sentence.tokens.begin(), sentence.tokens.end(),
      [&](const Token& t) { return lex.superlative_tags.contains(t.pos); }));
}

RankedList baseline_suppos(std::string group_id, std::span<const SupposItem> items,
                           SupposMode mode, std::uint64_t seed) {
  if (mode != SupposMode::random) {
    for (const auto& item : items) {
      if (!item.gold_label) {
        throw Error(ErrorKind::MissingLabels,
                    "gold label required for item " + item.item_id);
      }
    }
  }
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (mode == SupposMode::random) {
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(order));
  }
  auto tie_rank = [&](std::size_t i) {
    if (mode == SupposMode::random) return 0;
    const bool positive = *items[i].gold_label == 1;
    return (mode == SupposMode::best) == positive ? 0 : 1;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (items[a].superlative_count != items[b].superlative_count) {
      return items[a].superlative_count > items[b].superlative_count;
    }
    return tie_rank(a) < tie_rank(b);
  });
  RankedList list{std::move(group_id), {}};
  for (std::size_t i : order) {
    list.entries.push_back(
        {items[i].item_id, static_cast<double>(items[i].superlative_count), i});
  }
  return list;
}

std::vector<RankedList> baseline_classifier(std::span<const FeatureVector> train,
                                            std::span<const FeatureVector> test,
                                            std::size_t dimension,
                                            const TrainOptions& options,
                                            GradeScale scale) {
  HingeProblem problem;
  problem.dimension = dimension;
  bool has_pos = false;
  bool has_neg = false;
  for (const auto& x : train) {
    if (!x.grade) {
      throw Error(ErrorKind::InvalidArgument, "training item without grade");
    }
    const int g = *x.grade;
    int label = 0;
    if (scale == GradeScale::two_grade) {
      label = g > 0 ? 1 : -1;
    } else if (g >= 3) {
      label = 1;
    } else if (g <= 1) {
      label = -1;
    }
    if (label == 0) continue;
    problem.rows.push_back(x.entries);
    problem.labels.push_back(label);
    (label > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg) {
    throw Error(ErrorKind::SingleClassTraining,
                "classifier needs both interesting and boring training items");
  }
  const SolverResult solved = solve_hinge_dual(
      problem, {options.c, options.epsilon, options.max_iter, options.seed});

  std::map<std::string, std::vector<RankedEntry>> groups;
  for (std::size_t i = 0; i < test.size(); ++i) {
    auto& entries = groups[test[i].group_id];
    entries.push_back({test[i].item_id, test[i].dot(solved.w), entries.size()});
  }
  std::vector<RankedList> lists;
  for (auto& [group, entries] : groups) {
    lists.push_back(sort_by_score(group, std::move(entries)));
  }
  return lists;
}

}  // namespace trivia
