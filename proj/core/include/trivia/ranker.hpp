#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trivia/features.hpp"

namespace trivia {

struct PreferencePair {
  std::string group_id;
  /// Indices into the item list passed to build_pairs.
  std::size_t higher = 0;
  std::size_t lower = 0;
  bool operator==(const PreferencePair&) const = default;
};

/// Every same-group (i, j) with grade_i > grade_j. Groups are visited in
/// lexicographic order, and inside a group index pairs ascend. Throws
/// InvalidArgument for an ungraded item.
std::vector<PreferencePair> build_pairs(std::span<const FeatureVector> items);

struct TrainOptions {
  double c = 17.0;
  double epsilon = 0.21;
  int max_iter = 1000;
  std::uint64_t seed = 0;
};

struct TrainReport {
  int iterations = 0;
  /// Primal objective of the returned weights.
  double final_objective = 0.0;
  double dual_objective = 0.0;
  /// Pairs whose margin w.(x_h - x_l) falls below 1 - epsilon.
  std::size_t violated_pairs = 0;
  std::size_t pair_count = 0;
  bool converged = false;
  /// Dual objective per epoch; never increases.
  std::vector<double> objective_trace;
};

struct RankingModel {
  std::vector<double> weights;
  std::string space_checksum;
  double c_param = 17.0;
  double epsilon = 0.21;
  std::string kernel = "linear";
  TrainReport train_report;

  std::string to_json() const;
  static RankingModel from_json(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static RankingModel load(const std::filesystem::path& path);
};

/// Pairwise hinge-loss training over difference vectors, C per pair.
/// Throws NoPairs, NonPositiveC.
RankingModel train(std::span<const FeatureVector> items, std::size_t dimension,
                   std::string space_checksum, const TrainOptions& options);
RankingModel train(std::span<const FeatureVector> items,
                   const FeatureSpace& space, const TrainOptions& options);

/// w.x. Throws SpaceMismatch when the model was trained on another space.
double score(const RankingModel& model, const FeatureSpace& space,
             const FeatureVector& x);
double score(const RankingModel& model, const FeatureVector& x);

struct RankedEntry {
  std::string item_id;
  double score = 0.0;
  std::size_t index = 0;
  bool operator==(const RankedEntry&) const = default;
};

struct RankedList {
  std::string group_id;
  std::vector<RankedEntry> entries;
  bool operator==(const RankedList&) const = default;
};

/// Orders entries by score descending, ties by ascending index.
RankedList sort_by_score(std::string group_id, std::vector<RankedEntry> entries);

/// Scores one group's items and sorts them. Throws MixedGroups,
/// SpaceMismatch.
RankedList rank(const RankingModel& model, const FeatureSpace& space,
                std::span<const FeatureVector> items);
RankedList rank(const RankingModel& model, std::span<const FeatureVector> items);

}  // namespace trivia
