#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "trivia/corpus.hpp"

namespace trivia {

enum class GradeScale { five_grade, two_grade };

struct GradingConfig {
  /// Every trivium needs at least this many total votes.
  std::int64_t base_min_votes = 5;
  /// Trivia with LR strictly above this need high_min_votes total votes.
  double high_lr_threshold = 0.6;
  std::int64_t high_min_votes = 100;
  /// Strictly descending percentiles in (0, 100); N cutoffs give grades 0..N.
  std::vector<double> percentile_cutoffs{90.0, 75.0, 25.0, 10.0};
  GradeScale scale = GradeScale::five_grade;
  std::optional<std::size_t> max_chars;
  std::optional<std::size_t> min_trivia_per_entity;

  /// Throws InvalidArgument on a broken configuration.
  void validate() const;
  int max_grade() const;
};

struct GradedTrivia {
  TriviaRecord record;
  double lr = 0.0;
  int grade = 0;
  std::optional<int> class_label;

  bool operator==(const GradedTrivia&) const = default;
};

/// votes_interesting / votes_total. Throws ZeroVotes when votes_total is 0.
double likeness_ratio(const TriviaRecord& record);

/// Keeps r iff Y >= base_min_votes and (LR <= high_lr_threshold or
/// Y >= high_min_votes). Input order is preserved.
std::vector<TriviaRecord> apply_support_filter(
    std::span<const TriviaRecord> records, const GradingConfig& cfg);

/// Percentile p = 100 * #(records with strictly smaller LR) / N; the grade is
/// the number of cutoffs p does not reach, counted from the top cutoff down,
/// so with the defaults p >= 90 -> 4 and p < 10 -> 0. Throws
/// EmptyAfterFilter on empty input.
std::vector<GradedTrivia> assign_grades(std::span<const TriviaRecord> records,
                                        const GradingConfig& cfg);

/// class_label = grade = (lr > 0.5).
std::vector<GradedTrivia> to_two_grade(std::span<const GradedTrivia> graded);

/// Drops over-long texts (max_chars, counted in code points), then every
/// record of an entity left with fewer than min_trivia_per_entity records.
std::vector<TriviaRecord> entity_filters(std::span<const TriviaRecord> records,
                                         const GradingConfig& cfg);

/// support filter -> entity filters -> grades (-> two grades).
std::vector<GradedTrivia> grade_corpus(std::span<const TriviaRecord> records,
                                       const GradingConfig& cfg);

/// {"entity_id","text","lr","grade","class_label"?} per line.
void write_graded(std::ostream& out, std::span<const GradedTrivia> graded);
std::vector<GradedTrivia> parse_graded(std::istream& in);
std::vector<GradedTrivia> load_graded(const std::filesystem::path& path);

}  // namespace trivia
