#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace trivia {

/// A training trivium with its "X of Y found this interesting" votes.
struct TriviaRecord {
  std::string entity_id;
  std::string text;
  std::int64_t votes_interesting = 0;
  std::int64_t votes_total = 0;
  std::string source;

  bool operator==(const TriviaRecord&) const = default;
};

struct EntityRecord {
  std::string entity_id;
  std::string display_name;
  /// Sorted and unique; always contains display_name.
  std::vector<std::string> aliases;
  std::map<std::string, std::set<std::string>> attributes;
  std::optional<double> popularity;

  bool operator==(const EntityRecord&) const = default;
};

using KnowledgeBase = std::map<std::string, EntityRecord>;

/// Stand-in record for an entity missing from the knowledge base.
EntityRecord placeholder_entity(const std::string& entity_id);

inline constexpr int kRootHead = -1;

struct Token {
  std::string text;
  std::string lemma;
  std::string pos;
  int head = kRootHead;
  std::string deprel;
  std::string ner = "O";

  bool is_root() const noexcept { return head == kRootHead; }
  /// False for "O", "NONE" and empty tags.
  bool has_entity_type() const noexcept;

  bool operator==(const Token&) const = default;
};

struct Mention {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::string chain_id;
  bool in_sentence = false;

  bool operator==(const Mention&) const = default;
};

struct AnnotatedSentence {
  std::string entity_id;
  std::string sentence_id;
  std::string raw;
  std::vector<Token> tokens;
  /// Engaged when a coreference pass ran, even if it found nothing.
  std::optional<std::vector<Mention>> mentions;
  /// 1 = interesting, 0 = boring.
  std::optional<int> gold_label;

  /// Index of the first ROOT token. Throws NoRoot when none exists.
  std::size_t root_index() const;

  bool operator==(const AnnotatedSentence&) const = default;
};

enum class BlockKind {
  paragraph,
  infobox,
  table,
  image_caption,
  list,
  reference,
  link_cluster,
};

std::string_view to_string(BlockKind kind) noexcept;
std::optional<BlockKind> parse_block_kind(std::string_view name) noexcept;

struct PageBlock {
  BlockKind kind = BlockKind::paragraph;
  std::string text;

  bool operator==(const PageBlock&) const = default;
};

struct PageDocument {
  std::string entity_id;
  std::vector<PageBlock> blocks;

  bool operator==(const PageDocument&) const = default;
};

// JSONL ingestion. All text fields are NFC-normalized with whitespace runs
// collapsed; blank lines are skipped and unknown keys ignored.

std::vector<TriviaRecord> parse_trivia(std::istream& in);
std::vector<TriviaRecord> load_trivia(const std::filesystem::path& path);
void write_trivia(std::ostream& out, std::span<const TriviaRecord> records);

/// Accepts attribute triples {"entity_id","display_name"?,"attribute","value"}
/// (aliases via attribute "__alias") and grouped records
/// {"entity_id","display_name"?,"aliases"?,"attributes"?:{name:[values]}}.
/// Repeated (entity, attribute) values are unioned; the result does not
/// depend on line order.
KnowledgeBase parse_knowledge_base(std::istream& in);
KnowledgeBase load_knowledge_base(const std::filesystem::path& path);

/// Validates head indices, roots and mention spans. When several tokens
/// claim ROOT, the first is kept and the others are re-attached to it.
std::vector<AnnotatedSentence> parse_annotations(std::istream& in);
std::vector<AnnotatedSentence> load_annotations(
    const std::filesystem::path& path);
void write_annotations(std::ostream& out,
                       std::span<const AnnotatedSentence> sentences);

std::vector<PageDocument> parse_pages(std::istream& in);
std::vector<PageDocument> load_pages(const std::filesystem::path& path);

}  // namespace trivia
