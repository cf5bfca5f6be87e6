#include "trivia/annotate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string_view>

#include "trivia/error.hpp"
#include "trivia/text.hpp"

namespace trivia {

namespace {

using Lexicon = std::map<std::string_view, std::string_view>;

const Lexicon& closed_class() {
  static const Lexicon lex = [] {
    Lexicon m;
    for (auto w : {"the", "a", "an", "this", "that", "these", "those", "each",
                   "every", "some", "any", "no", "all", "both", "another"}) {
      m[w] = "DT";
    }
    for (auto w : {"of", "in", "on", "at", "by", "for", "with", "from", "about",
                   "as", "into", "after", "before", "during", "over", "under",
                   "than", "since", "because", "although", "though", "while",
                   "whereas", "despite", "unlike", "if", "through", "between",
                   "against", "without", "within", "behind", "until", "upon",
                   "outside", "inside", "like", "per", "among", "around"}) {
      m[w] = "IN";
    }
    for (auto w : {"and", "or", "but", "nor", "yet"}) m[w] = "CC";
    for (auto w : {"i", "me", "you", "he", "him", "she", "it", "we", "us",
                   "they", "them", "himself", "herself", "itself",
                   "themselves", "myself"}) {
      m[w] = "PRP";
    }
    for (auto w : {"my", "your", "his", "her", "its", "our", "their"}) {
      m[w] = "PRP$";
    }
    m["to"] = "TO";
    for (auto w : {"can", "could", "will", "would", "shall", "should", "may",
                   "might", "must"}) {
      m[w] = "MD";
    }
    for (auto w : {"who", "whom", "what"}) m[w] = "WP";
    m["which"] = "WDT";
    m["whose"] = "WP$";
    for (auto w : {"when", "where", "why", "how"}) m[w] = "WRB";
    for (auto w : {"not", "very", "also", "never", "really", "still", "even",
                   "only", "just", "later", "then", "there", "again", "too",
                   "almost", "already", "often", "soon", "ever"}) {
      m[w] = "RB";
    }
    for (auto w : {"more", "less"}) m[w] = "JJR";
    for (auto w : {"one", "two", "three", "four", "five", "six", "seven",
                   "eight", "nine", "ten", "hundred", "thousand", "million",
                   "billion"}) {
      m[w] = "CD";
    }
    return m;
  }();
  return lex;
}

// Finite verbs the suffix rules cannot see.
const Lexicon& finite_verbs() {
  static const Lexicon lex = [] {
    Lexicon m;
    for (auto w : {"is", "has", "does", "says", "gets", "makes", "goes",
                   "takes", "becomes", "remains", "features", "stars",
                   "reminds", "contains", "appears", "plays", "includes",
                   "holds", "shows", "uses", "wins"}) {
      m[w] = "VBZ";
    }
    for (auto w : {"are", "am", "have", "do"}) m[w] = "VBP";
    for (auto w : {"was", "were", "had", "did", "became", "won", "made",
                   "went", "took", "got", "said", "came", "gave", "wrote",
                   "ran", "began", "saw", "found", "told", "kept", "left",
                   "felt", "brought", "thought", "bought", "held", "stood",
                   "spent", "lost", "paid", "met", "sent", "built", "fell",
                   "grew", "knew", "drew", "chose", "broke", "spoke", "wore",
                   "sang", "shot", "hit", "cut", "put", "set", "let", "led",
                   "sold", "taught", "caught", "fought", "ate", "drove", "rode",
                   "flew", "threw", "forgot", "hid", "became", "overtook",
                   "underwent", "withdrew", "beat"}) {
      m[w] = "VBD";
    }
    return m;
  }();
  return lex;
}

const Lexicon& irregular_lemmas() {
  static const Lexicon lex = {
      {"is", "be"},        {"was", "be"},        {"were", "be"},
      {"are", "be"},       {"am", "be"},         {"been", "be"},
      {"has", "have"},     {"had", "have"},      {"did", "do"},
      {"does", "do"},      {"became", "become"}, {"becomes", "become"},
      {"won", "win"},      {"made", "make"},     {"went", "go"},
      {"took", "take"},    {"got", "get"},       {"said", "say"},
      {"came", "come"},    {"gave", "give"},     {"wrote", "write"},
      {"ran", "run"},      {"began", "begin"},   {"saw", "see"},
      {"found", "find"},   {"told", "tell"},     {"kept", "keep"},
      {"left", "leave"},   {"felt", "feel"},     {"brought", "bring"},
      {"thought", "think"}, {"bought", "buy"},   {"held", "hold"},
      {"stood", "stand"},  {"spent", "spend"},   {"lost", "lose"},
      {"paid", "pay"},     {"met", "meet"},      {"sent", "send"},
      {"built", "build"},  {"fell", "fall"},     {"grew", "grow"},
      {"knew", "know"},    {"drew", "draw"},     {"chose", "choose"},
      {"broke", "break"},  {"spoke", "speak"},   {"wore", "wear"},
      {"sang", "sing"},    {"led", "lead"},      {"sold", "sell"},
      {"taught", "teach"}, {"caught", "catch"},  {"fought", "fight"},
      {"ate", "eat"},      {"drove", "drive"},   {"rode", "ride"},
      {"flew", "fly"},     {"threw", "throw"},   {"forgot", "forget"},
      {"hid", "hide"},     {"best", "good"},     {"worst", "bad"},
      {"children", "child"}, {"men", "man"},     {"women", "woman"},
      {"people", "person"}, {"overtook", "overtake"},
      {"underwent", "undergo"}, {"withdrew", "withdraw"}};
  return lex;
}

const std::set<std::string_view>& superlatives() {
  static const std::set<std::string_view> words = {
      "best", "worst", "most", "least", "highest", "lowest", "largest",
      "biggest", "greatest", "longest", "shortest", "smallest", "youngest",
      "oldest", "fastest", "latest", "earliest", "finest", "richest",
      "strongest", "toughest", "hardest", "easiest", "darkest", "funniest",
      "scariest", "deadliest", "costliest"};
  return words;
}

// Words ending in "-est" that are not superlatives.
const std::set<std::string_view>& est_exceptions() {
  static const std::set<std::string_view> words = {
      "interest", "forest", "honest", "modest", "request", "suggest",
      "protest", "contest", "harvest", "manifest", "arrest", "invest",
      "digest", "earnest", "conquest", "behest", "tempest", "inquest",
      "attest", "detest", "divest", "infest", "ingest", "molest", "nest",
      "guest", "chest", "quest", "crest", "rest", "test", "west", "vest",
      "zest", "pest", "lest", "jest", "unrest", "bequest", "protest",
      "everest", "alcest", "midwest", "priest", "dearest"};
  return words;
}

// Degree adverbs; an open-class word right after one is read as an adjective.
const std::set<std::string_view>& intensifiers() {
  static const std::set<std::string_view> words = {
      "very", "so", "too", "quite", "rather", "extremely", "fairly", "highly",
      "relatively", "surprisingly"};
  return words;
}

// Stems that regain a final "e" after "-ed"/"-ing" is removed.
constexpr std::string_view kSilentEEndings[] = {
    "is", "iz", "at", "av", "iv", "ov", "ur", "us", "os",
    "uc", "ak", "ik", "ot", "ag", "ir", "rg", "ng"};

bool ends_with_any(std::string_view w, std::span<const std::string_view> xs) {
  return std::any_of(xs.begin(), xs.end(),
                     [&](std::string_view s) { return w.ends_with(s); });
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_ascii_lower_word(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || c == '-';
  });
}

std::string undouble(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z' &&
      stem[n - 1] != 'f') {
    stem.pop_back();
  }
  return stem;
}

std::string restore_e(std::string stem) {
  if (ends_with_any(stem, kSilentEEndings) && stem.size() >= 3 &&
      !is_vowel(stem[stem.size() - 1])) {
    // "improvis" -> "improvise", "creat" -> "create"
    const char before = stem[stem.size() - 2];
    if (is_vowel(before) || stem.ends_with("rg") || stem.ends_with("ng")) {
      stem.push_back('e');
    }
  }
  return stem;
}

std::string lemmatize(const std::string& lower, std::string_view pos) {
  if (auto it = irregular_lemmas().find(lower); it != irregular_lemmas().end()) {
    return std::string(it->second);
  }
  if (!is_ascii_lower_word(lower) || lower.size() <= 3) return lower;
  std::string_view w = lower;
  if (pos == "VBD" || pos == "VBN" || pos == "JJ") {
    if (w.ends_with("ied")) return std::string(w.substr(0, w.size() - 3)) + "y";
    if (w.ends_with("eed")) return lower;
    if (w.ends_with("ed")) {
      std::string stem(w.substr(0, w.size() - 2));
      std::string doubled = undouble(stem);
      if (doubled != stem) return doubled;
      return restore_e(stem);
    }
    return lower;
  }
  if (pos == "VBG" && w.ends_with("ing") && w.size() > 5) {
    std::string stem(w.substr(0, w.size() - 3));
    std::string doubled = undouble(stem);
    if (doubled != stem) return doubled;
    return restore_e(stem);
  }
  if (pos == "JJS" && w.ends_with("est")) {
    std::string stem(w.substr(0, w.size() - 3));
    if (stem.ends_with("i")) return stem.substr(0, stem.size() - 1) + "y";
    return undouble(stem);
  }
  if (pos == "NNS" || pos == "VBZ") {
    if (w.ends_with("ies")) return std::string(w.substr(0, w.size() - 3)) + "y";
    if (w.ends_with("sses")) return std::string(w.substr(0, w.size() - 2));
    if (w.ends_with("ches") || w.ends_with("shes") || w.ends_with("xes")) {
      return std::string(w.substr(0, w.size() - 2));
    }
    if (w.ends_with("s") && !w.ends_with("ss") && !w.ends_with("us") &&
        !w.ends_with("is")) {
      return std::string(w.substr(0, w.size() - 1));
    }
  }
  return lower;
}

std::string punct_tag(std::string_view t) {
  if (t == "." || t == "!" || t == "?") return ".";
  if (t == ",") return ",";
  if (t == "(" || t == "[") return "-LRB-";
  if (t == ")" || t == "]") return "-RRB-";
  if (t == "\"" || t == "“" || t == "”" || t == "'" || t == "‘" || t == "’") {
    return "''";
  }
  if (t == "$" || t == "£" || t == "€") return "$";
  return ":";
}

bool is_number_token(std::string_view t) {
  bool digit = false;
  for (char c : t) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != ',' && c != '.' && c != '-' && c != '%') {
      return false;
    }
  }
  return digit;
}

// "$274,092,705", "£5.37", "€10m"
bool is_currency_amount(std::string_view t) {
  for (std::string_view sym : {"$", "£", "€", "¥"}) {
    if (t.starts_with(sym) && t.size() > sym.size()) {
      char c = t[sym.size()];
      return c >= '0' && c <= '9';
    }
  }
  return false;
}

bool is_open_class(std::string_view lower) {
  return is_ascii_lower_word(lower) && !closed_class().contains(lower) &&
         !finite_verbs().contains(lower);
}

std::string tag_word(const std::vector<std::string>& tokens,
                     const std::vector<std::string>& lowered, std::size_t i,
                     const std::vector<std::string>& tags_so_far) {
  const std::string& tok = tokens[i];
  const std::string& lower = lowered[i];
  if (is_punctuation_token(tok)) return punct_tag(tok);
  if (tok == "'s" || tok == "’s") return "POS";
  if (is_currency_amount(tok) || is_number_token(tok)) return "CD";

  const bool capitalized = is_capitalized(tok);
  const bool sentence_initial = i == 0 || (i == 1 && is_punctuation_token(tokens[0]));
  if (capitalized && !(sentence_initial || lower == "i")) return "NNP";
  if (capitalized && sentence_initial && !closed_class().contains(lower) &&
      !finite_verbs().contains(lower) && !superlatives().contains(lower)) {
    return "NNP";
  }

  if (lower == "most" || lower == "least") {
    if (i + 1 < tokens.size() && is_open_class(lowered[i + 1])) return "RBS";
    return "JJS";
  }
  if (auto it = closed_class().find(lower); it != closed_class().end()) {
    return std::string(it->second);
  }
  const std::string& prev = i > 0 ? tags_so_far[i - 1] : std::string();
  const bool after_modifier =
      prev == "DT" || prev == "PRP$" || prev == "JJ" || prev == "JJS";
  if (auto it = finite_verbs().find(lower); it != finite_verbs().end()) {
    return after_modifier ? "NN" : std::string(it->second);
  }
  if (i > 0 && intensifiers().contains(lowered[i - 1]) &&
      !superlatives().contains(lower) && !lower.ends_with("ly")) {
    return "JJ";
  }
  if (superlatives().contains(lower)) return "JJS";
  if (lower.size() > 4 && lower.ends_with("est") &&
      !est_exceptions().contains(lower)) {
    return "JJS";
  }
  if (lower.size() > 3 && lower.ends_with("ed")) {
    if (prev == "DT" || prev == "PRP$" || prev == "JJ" || prev == "RB") {
      return "JJ";
    }
    return "VBD";
  }
  if (lower.size() > 3 && lower.ends_with("ly")) return "RB";
  if (lower.size() > 4 && lower.ends_with("ing")) return "VBG";
  if (lower.size() > 3 && lower.ends_with("s") && !lower.ends_with("ss") &&
      !lower.ends_with("us") && !lower.ends_with("is")) {
    return "NNS";
  }
  return "NN";
}

bool is_finite_verb_tag(std::string_view pos) {
  return pos == "VBD" || pos == "VBZ" || pos == "VBP";
}

bool is_nominal_tag(std::string_view pos) {
  return pos == "NN" || pos == "NNS" || pos == "NNP" || pos == "PRP";
}

void tag_money(std::vector<Token>& tokens,
               const std::vector<std::string>& lowered) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_currency_amount(tokens[i].text)) {
      tokens[i].ner = "MONEY";
      if (i + 1 < tokens.size() &&
          (lowered[i + 1] == "million" || lowered[i + 1] == "billion")) {
        tokens[i + 1].ner = "MONEY";
      }
      continue;
    }
    if (is_number_token(tokens[i].text) && i + 1 < tokens.size() &&
        (lowered[i + 1] == "million" || lowered[i + 1] == "billion")) {
      tokens[i].ner = "MONEY";
      tokens[i + 1].ner = "MONEY";
      if (i > 0 && punct_tag(tokens[i - 1].text) == "$") {
        tokens[i - 1].ner = "MONEY";
      }
    }
  }
}

void tag_capitalized_runs(std::vector<Token>& tokens,
                          const EntityRecord& entity) {
  std::set<std::string> value_keys;
  for (const auto& [attr, values] : entity.attributes) {
    for (const auto& v : values) value_keys.insert(match_key(v));
  }
  auto capital = [&](std::size_t i) {
    return tokens[i].pos == "NNP" && tokens[i].ner == "O";
  };

  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!capital(i)) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < tokens.size() && capital(run_end)) ++run_end;

    std::vector<bool> linked(run_end - i, false);
    for (std::size_t start = i; start < run_end; ++start) {
      for (std::size_t end = run_end; end > start; --end) {
        std::vector<std::string> words;
        for (std::size_t k = start; k < end; ++k) words.push_back(tokens[k].text);
        if (value_keys.contains(match_key(words))) {
          for (std::size_t k = start; k < end; ++k) {
            tokens[k].ner = "PERSON";
            linked[k - i] = true;
          }
          start = end - 1;
          break;
        }
      }
    }
    const bool sentence_initial = i == 0;
    if (!sentence_initial) {
      for (std::size_t k = i; k < run_end; ++k) {
        if (!linked[k - i]) tokens[k].ner = "PERSON";
      }
    }
    i = run_end;
  }
}

}  // namespace

AnnotatedSentence fallback_annotate(std::string_view raw,
                                    const EntityRecord& entity,
                                    std::string sentence_id) {
  AnnotatedSentence s;
  s.entity_id = entity.entity_id;
  s.sentence_id = std::move(sentence_id);
  s.raw = normalize_text(raw);
  std::vector<std::string> words = tokenize(s.raw);
  if (words.empty()) throw Error(ErrorKind::EmptyInput, "nothing to annotate");

  std::vector<std::string> lowered;
  lowered.reserve(words.size());
  for (const auto& w : words) lowered.push_back(unicode_lower(w));

  std::vector<std::string> tags;
  for (std::size_t i = 0; i < words.size(); ++i) {
    tags.push_back(tag_word(words, lowered, i, tags));
  }

  s.tokens.resize(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    Token& t = s.tokens[i];
    t.text = words[i];
    t.pos = tags[i];
    t.lemma = t.pos == "NNP" ? lowered[i] : lemmatize(lowered[i], t.pos);
    t.ner = "O";
  }

  std::size_t root = words.size();
  for (std::size_t i = 0; i < words.size() && root == words.size(); ++i) {
    if (is_finite_verb_tag(tags[i])) root = i;
  }
  for (std::size_t i = 0; i < words.size() && root == words.size(); ++i) {
    if (!is_punctuation_token(words[i])) root = i;
  }
  if (root == words.size()) root = 0;

  for (std::size_t i = 0; i < words.size(); ++i) {
    Token& t = s.tokens[i];
    if (i == root) {
      t.head = kRootHead;
      t.deprel = "root";
    } else {
      t.head = static_cast<int>(root);
      t.deprel = is_punctuation_token(t.text) ? "punct" : "dep";
    }
  }
  for (std::size_t i = root; i-- > 0;) {
    if (is_nominal_tag(tags[i])) {
      s.tokens[i].deprel = "nsubj";
      break;
    }
  }

  tag_money(s.tokens, lowered);
  tag_capitalized_runs(s.tokens, entity);
  return s;
}

}  // namespace trivia
