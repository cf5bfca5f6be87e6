#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "trivia/features.hpp"
#include "trivia/ranker.hpp"

namespace trivia {

struct GridSpec {
  std::vector<double> c_values;
  std::vector<double> epsilon_values;

  /// "C1,C2,...xE1,E2,..." e.g. "1,17,100x0.1,0.21".
  static GridSpec parse(std::string_view text);
};

struct GridCell {
  double c = 0.0;
  double epsilon = 0.0;
  double mean_ndcg = 0.0;
  /// Folds that produced at least one pair.
  int folds_used = 0;
};

struct GridResult {
  std::vector<GridCell> cells;  // grid order: C outer, epsilon inner
  GridCell best;
};

/// Groups are shuffled with `seed` and dealt round-robin into min(folds,
/// #groups) folds. Each cell's score is the mean NDCG@k over held-out
/// groups; the first best cell in grid order wins. Throws InvalidArgument
/// for an empty grid or fewer than two groups.
GridResult grid_search(std::span<const FeatureVector> items,
                       std::size_t dimension, const GridSpec& grid, int folds,
                       const TrainOptions& base, std::size_t k = 10);

}  // namespace trivia
