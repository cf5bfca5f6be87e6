#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trivia/corpus.hpp"
#include "trivia/lexicons.hpp"

namespace trivia {

/// Feature families: Unigram, Linguistic, Entity.
enum class FeatureBlock : char { unigram = 'U', linguistic = 'L', entity = 'E' };

struct BlockSet {
  bool unigram = true;
  bool linguistic = true;
  bool entity = true;

  /// "U", "U+L", "U+L+E", ... (any order, '+' separated).
  static BlockSet parse(std::string_view text);
  std::string to_string() const;
  bool contains(FeatureBlock block) const noexcept;
  bool operator==(const BlockSet&) const = default;
};

using NamedFeatures = std::set<std::string>;

/// Prefix that keeps unigram names apart from linguistic/entity names.
inline constexpr std::string_view kUnigramPrefix = "u:";

/// Lowercase, drop punctuation-only tokens and stopwords, Porter-stem the
/// rest. Order is preserved.
std::vector<std::string> preprocess_tokens(const AnnotatedSentence& sentence,
                                           const Lexicons& lex);

/// superPOS, contradiction, root_<lemma>, subj_<lemma> and exactly one of
/// fog_low / fog_mid / fog_high.
NamedFeatures linguistic_features(const AnnotatedSentence& sentence,
                                  const Lexicons& lex);

/// NE-type presence (e.g. MONEY), entity_<Attribute> for spans that spell a
/// knowledge-base value, entity_unlinked_<TYPE> otherwise, and the
/// underroot_ variants for spans whose head attaches to the root.
NamedFeatures entity_features(const AnnotatedSentence& sentence,
                              const EntityRecord& entity);

/// Frozen name -> column dictionary plus unigram IDF statistics.
class FeatureSpace {
 public:
  FeatureSpace() = default;
  explicit FeatureSpace(BlockSet blocks) : blocks_(blocks) {}

  /// Registers a name; throws InvalidArgument once frozen.
  void add(const std::string& name, FeatureBlock block);
  void set_idf(const std::string& term, double idf);
  void set_doc_count(std::size_t n) { doc_count_ = n; }
  void set_lexicon_checksums(std::string stopwords, std::string contradictions);
  /// Assigns dense indices in lexicographic name order and computes the
  /// checksum. Further add() calls throw.
  void freeze();

  bool frozen() const noexcept { return frozen_; }
  std::size_t size() const noexcept { return names_.size(); }
  BlockSet blocks() const noexcept { return blocks_; }
  std::size_t doc_count() const noexcept { return doc_count_; }
  std::optional<std::uint32_t> index_of(std::string_view name) const;
  const std::string& name_of(std::uint32_t index) const;
  FeatureBlock block_of(std::uint32_t index) const;
  std::optional<double> idf_of(std::string_view term) const;
  const std::map<std::string, double, std::less<>>& idf_table() const noexcept {
    return idf_;
  }
  const std::string& stopwords_checksum() const noexcept { return stopwords_sum_; }
  const std::string& contradictions_checksum() const noexcept {
    return contradictions_sum_;
  }
  /// SHA-256 over the canonical serialization; empty until frozen.
  const std::string& checksum() const noexcept { return checksum_; }

  std::string to_json() const;
  static FeatureSpace from_json(std::string_view text);
  void save(const std::filesystem::path& path) const;
  static FeatureSpace load(const std::filesystem::path& path);

 private:
  std::string canonical_content() const;

  BlockSet blocks_;
  std::map<std::string, FeatureBlock, std::less<>> pending_;
  std::map<std::string, std::uint32_t, std::less<>> name_to_index_;
  std::vector<std::string> names_;
  std::vector<FeatureBlock> block_tags_;
  std::map<std::string, double, std::less<>> idf_;
  std::size_t doc_count_ = 0;
  std::string stopwords_sum_;
  std::string contradictions_sum_;
  bool frozen_ = false;
  std::string checksum_;
};

/// Sparse row; entries sorted by index, no explicit zeros.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  std::string group_id;
  std::optional<int> grade;
  /// Sentence id carried through to ranked output.
  std::string item_id;

  double dot(std::span<const double> weights) const;
  double squared_norm() const;
  bool operator==(const FeatureVector&) const = default;
};

struct TrainingItem {
  AnnotatedSentence sentence;
  EntityRecord entity;
  int grade = 0;
};

/// idf(t) = ln((1 + N) / (1 + df(t))) + 1 over the N training sentences.
/// Registers every training stem, the five fixed linguistic names, and the
/// root_/subj_/entity names seen in training, restricted to `blocks`.
/// Throws EmptyTrainingSet.
FeatureSpace fit_feature_space(std::span<const TrainingItem> train,
                               const Lexicons& lex, BlockSet blocks = {});

/// U block: tf * idf, L2-normalized within the block; L/E features 1.0.
/// Names missing from the space are skipped. Throws UnfrozenSpace.
FeatureVector featurize_item(const AnnotatedSentence& sentence,
                             const EntityRecord& entity,
                             const FeatureSpace& space, const Lexicons& lex,
                             std::optional<int> grade = std::nullopt);

/// LETOR lines "grade qid:<group> idx:val ... # item_id" with 1-based
/// indices. Ungraded vectors are written with grade 0.
void write_letor(std::ostream& out, std::span<const FeatureVector> vectors);
std::vector<FeatureVector> parse_letor(std::istream& in);
std::vector<FeatureVector> load_letor(const std::filesystem::path& path);

}  // namespace trivia
