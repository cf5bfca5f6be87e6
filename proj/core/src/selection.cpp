#include "trivia/selection.hpp"

#include <algorithm>
#include <set>

#include "trivia/error.hpp"
#include "trivia/text.hpp"

namespace trivia {

namespace {

std::map<std::string, AntecedentClass> default_pronouns() {
  std::map<std::string, AntecedentClass> table;
  for (auto p : {"he", "she", "him", "her", "his", "hers"}) {
    table[p] = AntecedentClass::person_required;
  }
  for (auto p : {"it", "its", "this", "that"}) {
    table[p] = AntecedentClass::any_entity;
  }
  for (auto p : {"they", "them", "their", "theirs"}) {
    table[p] = AntecedentClass::plural_entity;
  }
  return table;
}

}  // namespace

SelectionConfig SelectionConfig::movie_defaults() {
  return SelectionConfig{default_pronouns(), {"the film", "the movie"}, true};
}

SelectionConfig SelectionConfig::celebrity_defaults() {
  return SelectionConfig{
      default_pronouns(), {"the actor", "the actress", "the director"}, true};
}

SelectionConfig SelectionConfig::for_domain(std::string_view domain) {
  if (domain == "movie") return movie_defaults();
  if (domain == "celebrity") return celebrity_defaults();
  throw Error(ErrorKind::InvalidArgument,
              "unknown domain \"" + std::string(domain) + "\"");
}

void SelectionConfig::validate() const {
  if (pronoun_table.empty()) {
    throw Error(ErrorKind::InvalidArgument, "pronoun table is empty");
  }
  if (definite_referents.empty()) {
    throw Error(ErrorKind::InvalidArgument, "definite referent list is empty");
  }
  for (const auto& [p, cls] : pronoun_table) {
    if (p != unicode_lower(p)) {
      throw Error(ErrorKind::InvalidArgument, "pronoun must be lowercase: " + p);
    }
  }
}

std::vector<std::string> extract_cct(const PageDocument& page) {
  std::vector<std::string> paragraphs;
  for (const auto& block : page.blocks) {
    if (block.kind == BlockKind::paragraph) paragraphs.push_back(block.text);
  }
  return paragraphs;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_closer(std::string_view rest) {
  for (std::string_view q : {"\"", "'", ")", "]", "”", "’"}) {
    if (rest.starts_with(q)) return true;
  }
  return false;
}

std::size_t closer_length(std::string_view rest) {
  for (std::string_view q : {"\"", "'", ")", "]", "”", "’"}) {
    if (rest.starts_with(q)) return q.size();
  }
  return 0;
}

bool starts_sentence(std::string_view rest) {
  for (std::string_view q : {"\"", "'", "(", "“", "‘"}) {
    if (rest.starts_with(q)) {
      rest.remove_prefix(q.size());
      break;
    }
  }
  return !rest.empty() && is_capitalized(rest);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// The whitespace-delimited word that ends at `end` (exclusive).
std::string_view word_before(std::string_view text, std::size_t end) {
  std::size_t begin = end;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  std::string_view word = text.substr(begin, end - begin);
  while (!word.empty() && (word.front() == '(' || word.front() == '"' ||
                           word.front() == '\'')) {
    word.remove_prefix(1);
  }
  return word;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view paragraph) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  const std::size_t n = paragraph.size();
  for (std::size_t i = 0; i < n; ++i) {
    const char c = paragraph[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t end = i + 1;
    while (end < n && (paragraph[end] == '.' || paragraph[end] == '!' ||
                       paragraph[end] == '?')) {
      ++end;
    }
    while (end < n && is_closer(paragraph.substr(end))) {
      end += closer_length(paragraph.substr(end));
    }
    if (end < n && !is_space(paragraph[end])) continue;
    if (c == '.' && is_known_abbreviation(word_before(paragraph, i + 1))) {
      continue;
    }
    std::size_t next = end;
    while (next < n && is_space(paragraph[next])) ++next;
    if (next < n && !starts_sentence(paragraph.substr(next))) continue;

    std::string_view sentence = trim(paragraph.substr(start, end - start));
    if (!sentence.empty()) sentences.emplace_back(sentence);
    start = end;
    i = end - 1;
  }
  std::string_view tail = trim(paragraph.substr(std::min(start, n)));
  if (!tail.empty()) sentences.emplace_back(tail);
  return sentences;
}

namespace {

std::vector<std::vector<std::string>> phrase_tokens(
    const EntityRecord& entity, const SelectionConfig& cfg) {
  std::vector<std::vector<std::string>> phrases;
  auto add = [&](std::string_view text) {
    std::vector<std::string> toks;
    for (auto& t : tokenize(normalize_text(text))) toks.push_back(unicode_lower(t));
    if (!toks.empty()) phrases.push_back(std::move(toks));
  };
  for (const auto& a : entity.aliases) add(a);
  for (const auto& r : cfg.definite_referents) add(r);
  return phrases;
}

// Marks tokens covered by an alias or definite-referent occurrence.
std::vector<bool> referent_cover(
    const std::vector<std::string>& lowered,
    const std::vector<std::vector<std::string>>& phrases) {
  std::vector<bool> covered(lowered.size(), false);
  for (const auto& phrase : phrases) {
    if (phrase.size() > lowered.size()) continue;
    for (std::size_t i = 0; i + phrase.size() <= lowered.size(); ++i) {
      if (std::equal(phrase.begin(), phrase.end(), lowered.begin() +
                                                       static_cast<std::ptrdiff_t>(i))) {
        std::fill_n(covered.begin() + static_cast<std::ptrdiff_t>(i),
                    phrase.size(), true);
      }
    }
  }
  return covered;
}

bool mention_path_keeps(const AnnotatedSentence& s, const EntityRecord& entity,
                        const SelectionConfig& cfg) {
  std::set<std::string> referents;
  for (const auto& a : entity.aliases) referents.insert(match_key(a));
  for (const auto& r : cfg.definite_referents) referents.insert(match_key(r));
  for (const auto& m : *s.mentions) {
    if (m.in_sentence) continue;
    std::vector<std::string> words;
    for (std::size_t i = m.start; i < m.end && i < s.tokens.size(); ++i) {
      words.push_back(s.tokens[i].text);
    }
    if (!referents.contains(match_key(words))) return false;
  }
  return true;
}

bool heuristic_path_keeps(const AnnotatedSentence& s,
                          const EntityRecord& entity,
                          const SelectionConfig& cfg) {
  std::vector<std::string> lowered;
  lowered.reserve(s.tokens.size());
  for (const auto& t : s.tokens) lowered.push_back(unicode_lower(t.text));
  const auto covered = referent_cover(lowered, phrase_tokens(entity, cfg));

  bool seen_person = false;
  bool seen_entity = false;
  bool seen_alias = false;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (covered[i]) {
      seen_alias = true;
      continue;
    }
    if (auto it = cfg.pronoun_table.find(lowered[i]);
        it != cfg.pronoun_table.end()) {
      bool resolved = false;
      switch (it->second) {
        case AntecedentClass::person_required:
          resolved = seen_person;
          break;
        case AntecedentClass::any_entity:
          resolved = seen_entity || seen_alias;
          break;
        case AntecedentClass::plural_entity:
          resolved = seen_entity;
          break;
      }
      if (!resolved) return false;
    }
    if (s.tokens[i].has_entity_type()) {
      seen_entity = true;
      if (s.tokens[i].ner == "PERSON") seen_person = true;
    }
  }
  return true;
}

}  // namespace

bool is_self_contained(const AnnotatedSentence& sentence,
                       const EntityRecord& entity, const SelectionConfig& cfg) {
  if (cfg.use_mentions_when_present && sentence.mentions) {
    return mention_path_keeps(sentence, entity, cfg);
  }
  return heuristic_path_keeps(sentence, entity, cfg);
}

std::vector<AnnotatedSentence> select_candidates(
    std::span<const AnnotatedSentence> sentences, const EntityRecord& entity,
    const SelectionConfig& cfg) {
  std::vector<AnnotatedSentence> kept;
  for (const auto& s : sentences) {
    if (is_self_contained(s, entity, cfg)) kept.push_back(s);
  }
  return kept;
}

}  // namespace trivia
