#include "trivia/grading.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "json_lines.hpp"
#include "trivia/error.hpp"
#include "trivia/text.hpp"

namespace trivia {

using detail::Json;

void GradingConfig::validate() const {
  if (base_min_votes < 1) {
    throw Error(ErrorKind::InvalidArgument, "base_min_votes must be >= 1");
  }
  if (high_lr_threshold < 0.0 || high_lr_threshold > 1.0) {
    throw Error(ErrorKind::InvalidArgument,
                "high_lr_threshold must lie in [0, 1]");
  }
  if (percentile_cutoffs.empty()) {
    throw Error(ErrorKind::InvalidArgument, "at least one percentile cutoff");
  }
  for (std::size_t i = 0; i < percentile_cutoffs.size(); ++i) {
    double c = percentile_cutoffs[i];
    if (!(c > 0.0 && c < 100.0)) {
      throw Error(ErrorKind::InvalidArgument, "cutoffs must lie in (0, 100)");
    }
    if (i > 0 && !(c < percentile_cutoffs[i - 1])) {
      throw Error(ErrorKind::InvalidArgument,
                  "cutoffs must be strictly descending");
    }
  }
}

int GradingConfig::max_grade() const {
  return scale == GradeScale::two_grade
             ? 1
             : static_cast<int>(percentile_cutoffs.size());
}

double likeness_ratio(const TriviaRecord& record) {
  if (record.votes_total == 0) {
    throw Error(ErrorKind::ZeroVotes, record.entity_id + ": " + record.text);
  }
  return static_cast<double>(record.votes_interesting) /
         static_cast<double>(record.votes_total);
}

std::vector<TriviaRecord> apply_support_filter(
    std::span<const TriviaRecord> records, const GradingConfig& cfg) {
  std::vector<TriviaRecord> kept;
  for (const auto& r : records) {
    if (r.votes_total < cfg.base_min_votes) continue;
    if (likeness_ratio(r) > cfg.high_lr_threshold &&
        r.votes_total < cfg.high_min_votes) {
      continue;
    }
    kept.push_back(r);
  }
  return kept;
}

std::vector<GradedTrivia> assign_grades(std::span<const TriviaRecord> records,
                                        const GradingConfig& cfg) {
  cfg.validate();
  if (records.empty()) {
    throw Error(ErrorKind::EmptyAfterFilter, "no trivia left to grade");
  }
  const std::size_t n = records.size();
  std::vector<double> sorted_lr;
  sorted_lr.reserve(n);
  for (const auto& r : records) sorted_lr.push_back(likeness_ratio(r));
  std::sort(sorted_lr.begin(), sorted_lr.end());

  const int top = static_cast<int>(cfg.percentile_cutoffs.size());
  std::vector<GradedTrivia> graded;
  graded.reserve(n);
  for (const auto& r : records) {
    const double lr = likeness_ratio(r);
    const auto smaller = static_cast<double>(
        std::lower_bound(sorted_lr.begin(), sorted_lr.end(), lr) -
        sorted_lr.begin());
    // p >= cutoff  <=>  100 * smaller >= cutoff * n, kept in this form so
    // integral cutoffs compare exactly.
    int grade = 0;
    for (int i = 0; i < top; ++i) {
      if (100.0 * smaller >= cfg.percentile_cutoffs[static_cast<std::size_t>(i)] *
                                 static_cast<double>(n)) {
        grade = top - i;
        break;
      }
    }
    graded.push_back(GradedTrivia{r, lr, grade, std::nullopt});
  }
  return graded;
}

std::vector<GradedTrivia> to_two_grade(std::span<const GradedTrivia> graded) {
  std::vector<GradedTrivia> out(graded.begin(), graded.end());
  for (auto& g : out) {
    const int label = g.lr > 0.5 ? 1 : 0;
    g.class_label = label;
    g.grade = label;
  }
  return out;
}

namespace {

std::size_t code_point_count(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

}  // namespace

std::vector<TriviaRecord> entity_filters(std::span<const TriviaRecord> records,
                                         const GradingConfig& cfg) {
  std::vector<TriviaRecord> short_enough;
  for (const auto& r : records) {
    if (cfg.max_chars && code_point_count(r.text) > *cfg.max_chars) continue;
    short_enough.push_back(r);
  }
  if (!cfg.min_trivia_per_entity) return short_enough;

  std::map<std::string, std::size_t> per_entity;
  for (const auto& r : short_enough) ++per_entity[r.entity_id];
  std::vector<TriviaRecord> kept;
  for (auto& r : short_enough) {
    if (per_entity[r.entity_id] >= *cfg.min_trivia_per_entity) {
      kept.push_back(std::move(r));
    }
  }
  return kept;
}

std::vector<GradedTrivia> grade_corpus(std::span<const TriviaRecord> records,
                                       const GradingConfig& cfg) {
  cfg.validate();
  auto supported = apply_support_filter(records, cfg);
  auto filtered = entity_filters(supported, cfg);
  auto graded = assign_grades(filtered, cfg);
  if (cfg.scale == GradeScale::two_grade) return to_two_grade(graded);
  return graded;
}

void write_graded(std::ostream& out, std::span<const GradedTrivia> graded) {
  for (const auto& g : graded) {
    Json obj = {{"entity_id", g.record.entity_id},
                {"text", g.record.text},
                {"lr", g.lr},
                {"grade", g.grade}};
    if (g.class_label) obj["class_label"] = *g.class_label;
    out << obj.dump() << '\n';
  }
}

std::vector<GradedTrivia> parse_graded(std::istream& in) {
  std::vector<GradedTrivia> graded;
  detail::for_each_json_line(in, [&](const Json& obj, std::size_t line) {
    GradedTrivia g;
    g.record.entity_id = detail::require_string(obj, "entity_id", line);
    g.record.text = normalize_text(detail::require_string(obj, "text", line));
    const Json& lr = detail::require(obj, "lr", line);
    if (!lr.is_number() || lr.get<double>() < 0.0 || lr.get<double>() > 1.0) {
      throw Error(ErrorKind::MalformedRecord, "lr must be a ratio in [0,1]",
                  line);
    }
    g.lr = lr.get<double>();
    g.grade = static_cast<int>(detail::require_integer(obj, "grade", line));
    if (g.grade < 0) {
      throw Error(ErrorKind::MalformedRecord, "negative grade", line);
    }
    if (auto it = obj.find("class_label"); it != obj.end() && !it->is_null()) {
      if (!it->is_number_integer()) {
        throw Error(ErrorKind::MalformedRecord, "class_label must be 0 or 1",
                    line);
      }
      g.class_label = it->get<int>();
    }
    graded.push_back(std::move(g));
  });
  return graded;
}

std::vector<GradedTrivia> load_graded(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_graded(in);
}

}  // namespace trivia
