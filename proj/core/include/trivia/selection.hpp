#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trivia/corpus.hpp"

namespace trivia {

/// What must appear earlier in the sentence for a pronoun to be resolvable
/// without leaving the sentence.
enum class AntecedentClass { person_required, any_entity, plural_entity };

struct SelectionConfig {
  /// Lowercase pronoun -> antecedent requirement.
  std::map<std::string, AntecedentClass> pronoun_table;
  /// Lowercase phrases that refer back to the target entity ("the film").
  std::vector<std::string> definite_referents;
  bool use_mentions_when_present = true;

  static SelectionConfig movie_defaults();
  static SelectionConfig celebrity_defaults();
  /// Selects movie_defaults() or celebrity_defaults() by name.
  static SelectionConfig for_domain(std::string_view domain);
  void validate() const;
};

/// Paragraph texts of the page, in order (Core Content Text).
std::vector<std::string> extract_cct(const PageDocument& page);

/// Rule-based sentence detector: a sentence ends at '.', '!' or '?'
/// (optionally followed by closing quotes/brackets) when the next
/// non-space character is uppercase or an opening quote. Known
/// abbreviations never end a sentence. Sentences are returned trimmed.
std::vector<std::string> split_sentences(std::string_view paragraph);

/// True when the sentence can be understood on its own.
bool is_self_contained(const AnnotatedSentence& sentence,
                       const EntityRecord& entity, const SelectionConfig& cfg);

/// Keeps the self-contained sentences, order preserved.
std::vector<AnnotatedSentence> select_candidates(
    std::span<const AnnotatedSentence> sentences, const EntityRecord& entity,
    const SelectionConfig& cfg);

}  // namespace trivia
