#include "trivia/model_selection.hpp"

#include <charconv>
#include <map>
#include <set>

#include "trivia/error.hpp"
#include "trivia/evalkit.hpp"
#include "trivia/random.hpp"

namespace trivia {

namespace {

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view part = text.substr(pos, comma - pos);
    double v = 0.0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || p != part.data() + part.size() ||
        !(v > 0.0)) {
      throw Error(ErrorKind::InvalidArgument,
                  "grid values must be positive numbers: " + std::string(text));
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

GridSpec GridSpec::parse(std::string_view text) {
  const auto x = text.find('x');
  if (x == std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument,
                "grid must look like C1,C2xE1,E2: " + std::string(text));
  }
  return GridSpec{parse_list(text.substr(0, x)), parse_list(text.substr(x + 1))};
}

GridResult grid_search(std::span<const FeatureVector> items,
                       std::size_t dimension, const GridSpec& grid, int folds,
                       const TrainOptions& base, std::size_t k) {
  if (grid.c_values.empty() || grid.epsilon_values.empty()) {
    throw Error(ErrorKind::InvalidArgument, "empty grid");
  }
  std::set<std::string> group_set;
  for (const auto& x : items) group_set.insert(x.group_id);
  std::vector<std::string> groups(group_set.begin(), group_set.end());
  if (groups.size() < 2 || folds < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "cross-validation needs two folds and two groups");
  }
  Rng rng(base.seed);
  rng.shuffle(std::span<std::string>(groups));
  const std::size_t fold_count =
      std::min(static_cast<std::size_t>(folds), groups.size());
  std::map<std::string, std::size_t> fold_of;
  for (std::size_t i = 0; i < groups.size(); ++i) fold_of[groups[i]] = i % fold_count;

  GridResult result;
  bool have_best = false;
  for (double c : grid.c_values) {
    for (double e : grid.epsilon_values) {
      GridCell cell{c, e, 0.0, 0};
      double ndcg_sum = 0.0;
      std::size_t scored_groups = 0;
      for (std::size_t f = 0; f < fold_count; ++f) {
        std::vector<FeatureVector> train_part;
        std::map<std::string, std::vector<FeatureVector>> held_out;
        for (const auto& x : items) {
          if (fold_of[x.group_id] == f) {
            held_out[x.group_id].push_back(x);
          } else {
            train_part.push_back(x);
          }
        }
        RankingModel model;
        try {
          model = train(train_part, dimension, {},
                        TrainOptions{c, e, base.max_iter, base.seed});
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::NoPairs) throw;
          continue;
        }
        ++cell.folds_used;
        for (const auto& [group, members] : held_out) {
          const RankedList ranked = rank(model, members);
          std::vector<int> grades;
          for (const auto& entry : ranked.entries) {
            grades.push_back(members[entry.index].grade.value_or(0));
          }
          ndcg_sum += ndcg_at_k(grades, k);
          ++scored_groups;
        }
      }
      if (scored_groups > 0) cell.mean_ndcg = ndcg_sum / scored_groups;
      result.cells.push_back(cell);
      if (!have_best || cell.mean_ndcg > result.best.mean_ndcg) {
        result.best = cell;
        have_best = true;
      }
    }
  }
  return result;
}

}  // namespace trivia
