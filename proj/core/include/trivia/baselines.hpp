#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trivia/corpus.hpp"
#include "trivia/features.hpp"
#include "trivia/grading.hpp"
#include "trivia/lexicons.hpp"
#include "trivia/ranker.hpp"

namespace trivia {

/// Seeded uniform shuffle of the items, cut to the first min(k, n). Scores
/// are 0. Throws InvalidArgument when k < 1.
RankedList baseline_random(std::string group_id,
                           std::span<const std::string> item_ids, std::size_t k,
                           std::uint64_t seed);

enum class SupposMode { best, worst, random };

std::string_view to_string(SupposMode mode) noexcept;

struct SupposItem {
  std::string item_id;
  int superlative_count = 0;
  std::optional<int> gold_label;
};

/// Tokens tagged with one of lex.superlative_tags.
int superlative_count(const AnnotatedSentence& sentence, const Lexicons& lex);

/// Sorted by superlative count, descending. Ties: positives first (best),
/// negatives first (worst), or a seeded shuffle (random); remaining ties keep
/// input order. The score is the count. Throws MissingLabels in best/worst
/// mode when a label is absent.
RankedList baseline_suppos(std::string group_id, std::span<const SupposItem> items,
                           SupposMode mode, std::uint64_t seed);

/// Pointwise linear hinge classifier. Five-grade training items map {3,4} to
/// +1 and {0,1} to -1; grade 2 is left out. Two-grade items use the grade as
/// the class. Test items are ranked per group (groups in lexicographic
/// order) by signed margin. Throws SingleClassTraining.
std::vector<RankedList> baseline_classifier(std::span<const FeatureVector> train,
                                            std::span<const FeatureVector> test,
                                            std::size_t dimension,
                                            const TrainOptions& options,
                                            GradeScale scale);

}  // namespace trivia
