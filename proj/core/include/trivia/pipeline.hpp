#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trivia/baselines.hpp"
#include "trivia/corpus.hpp"
#include "trivia/error.hpp"
#include "trivia/evalkit.hpp"
#include "trivia/features.hpp"
#include "trivia/grading.hpp"
#include "trivia/lexicons.hpp"
#include "trivia/model_selection.hpp"
#include "trivia/ranker.hpp"
#include "trivia/selection.hpp"

namespace trivia {

/// Pipeline stages; the value is the process exit code for a failure there.
enum class Stage {
  ingest = 2,
  grading = 3,
  featurize = 4,
  train = 5,
  selection = 6,
  rank = 7,
};

std::string_view to_string(Stage stage) noexcept;

class StageError : public Error {
 public:
  StageError(Stage stage, const Error& cause) : Error(cause), stage_(stage) {}
  Stage stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return static_cast<int>(stage_); }

 private:
  Stage stage_;
};

/// Runs fn, re-throwing library and I/O failures as StageError(stage).
template <typename F>
auto run_in_stage(Stage stage, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  } catch (const std::exception& e) {
    throw StageError(stage, Error(ErrorKind::Io, e.what()));
  }
}

enum class BaselineKind { random, suppos_best, suppos_worst, suppos_random, classifier };

std::string_view to_string(BaselineKind kind) noexcept;
/// "random", "suppos-best", "suppos-worst", "suppos-random", "classifier".
BaselineKind parse_baseline_kind(std::string_view name);

struct RunConfig {
  std::filesystem::path trivia;
  /// Optional; the fallback annotator covers sentences it does not list.
  std::filesystem::path annotations;
  std::filesystem::path pages;
  std::filesystem::path kb;
  std::filesystem::path output_dir;
  GradingConfig grading;
  std::string domain = "movie";
  TrainOptions ranker;
  BlockSet blocks;
  std::optional<GridSpec> grid;
  int folds = 5;
  std::size_t k = 10;
  std::vector<BaselineKind> baselines;
  /// Extra feature-block combinations trained and evaluated next to `blocks`.
  std::vector<BlockSet> ablations;
  /// Seeds used for the random and suppos-random baselines.
  int baseline_runs = 5;

  /// Throws InvalidArgument.
  void validate() const;
};

/// Annotated sentences keyed by (entity_id, raw text).
class AnnotationIndex {
 public:
  AnnotationIndex() = default;
  explicit AnnotationIndex(std::vector<AnnotatedSentence> sentences);
  static AnnotationIndex load(const std::filesystem::path& path);

  const AnnotatedSentence* find(const std::string& entity_id,
                                const std::string& raw) const;
  std::size_t size() const noexcept { return sentences_.size(); }
  std::span<const AnnotatedSentence> sentences() const noexcept {
    return sentences_;
  }

 private:
  std::vector<AnnotatedSentence> sentences_;
  std::map<std::pair<std::string, std::string>, std::size_t> by_text_;
};

const EntityRecord& entity_or_placeholder(const KnowledgeBase& kb,
                                          const std::string& entity_id,
                                          EntityRecord& scratch);

/// Annotation for each graded trivium (file entry or fallback annotator)
/// paired with its entity record and grade. Sentence ids of fallback
/// annotations are "<entity>:t<n>".
std::vector<TrainingItem> training_items(std::span<const GradedTrivia> graded,
                                         const KnowledgeBase& kb,
                                         const AnnotationIndex& annotations);

struct CandidatePool {
  /// Every sentence of the core content text, per entity in page order.
  std::vector<AnnotatedSentence> pool;
  /// The self-contained subset of pool.
  std::vector<AnnotatedSentence> candidates;
};

/// CCT -> sentence split -> annotate -> select, entities in page-file order.
/// Fallback sentence ids are "<entity>:s<n>" with n counted per entity.
CandidatePool prepare_candidates(std::span<const PageDocument> pages,
                                 const KnowledgeBase& kb,
                                 const AnnotationIndex& annotations,
                                 const SelectionConfig& selection);

std::vector<FeatureVector> featurize_sentences(
    std::span<const AnnotatedSentence> sentences, const KnowledgeBase& kb,
    const FeatureSpace& space, const Lexicons& lex);

/// Ranks each entity's candidates and keeps the top k. Lists follow the
/// order in which entities first appear.
std::vector<RankedList> rank_candidates(std::span<const AnnotatedSentence> candidates,
                                        const KnowledgeBase& kb,
                                        const FeatureSpace& space,
                                        const RankingModel& model,
                                        const Lexicons& lex, std::size_t k);

/// One list per run: a single run, or baseline_runs runs with seeds
/// seed, seed + 1, ... for the seeded baselines.
std::vector<std::vector<RankedList>> run_baseline(
    BaselineKind kind, const CandidatePool& pool, const KnowledgeBase& kb,
    std::span<const FeatureVector> train_vectors, const FeatureSpace& space,
    const Lexicons& lex, const RunConfig& config);

/// entity_id, rank, score (6 decimals), sentence_id, text; tab-separated.
void write_ranked_tsv(std::ostream& out, std::span<const RankedList> lists,
                      const std::map<std::string, std::string>& text_by_id);
std::vector<RankedList> parse_ranked_tsv(std::istream& in);
std::vector<RankedList> load_ranked_tsv(const std::filesystem::path& path);

/// Gold labels of pool sentences by sentence id, and positives per entity.
struct GoldStandard {
  std::map<std::string, int> labels;
  std::map<std::string, std::size_t> positives;
};
GoldStandard gold_from(std::span<const AnnotatedSentence> sentences);

/// Averages the evaluation of several runs of one system.
EvalReport evaluate_runs(std::span<const std::vector<RankedList>> runs,
                         const GoldStandard& gold, std::size_t k);

struct TrainArtifacts {
  std::vector<GradedTrivia> graded;
  FeatureSpace space;
  std::vector<FeatureVector> vectors;
  RankingModel model;
  std::optional<GridResult> grid;
};

/// grade -> fit features -> featurize -> (grid search) -> train. When
/// output_dir is set, writes graded.jsonl, feature_space.json, train.letor
/// and model.json there. Throws StageError.
TrainArtifacts run_train_phase(const RunConfig& config, const KnowledgeBase& kb,
                               const AnnotationIndex& annotations);

struct RetrievalResult {
  CandidatePool pool;
  std::vector<RankedList> ranked;
};

/// Candidate extraction and ranking with a trained model; writes
/// candidates.jsonl and ranked.tsv when output_dir is set. Throws StageError.
RetrievalResult run_retrieval_phase(const RunConfig& config,
                                    const KnowledgeBase& kb,
                                    const AnnotationIndex& annotations,
                                    const TrainArtifacts& trained);

struct SystemResult {
  std::string name;
  std::vector<std::vector<RankedList>> runs;
  std::optional<EvalReport> report;
};

struct RunAllResult {
  TrainArtifacts trained;
  RetrievalResult retrieval;
  std::vector<SystemResult> systems;
};

/// Both phases, every requested baseline and ablation, then evaluation
/// against the gold labels of the page sentences (skipped when there are
/// none). Writes eval.json and per-system ranked files. Throws StageError.
RunAllResult run_all(const RunConfig& config);

}  // namespace trivia
