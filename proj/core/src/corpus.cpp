#include "trivia/corpus.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <ostream>

#include "json_lines.hpp"
#include "trivia/error.hpp"
#include "trivia/text.hpp"

namespace trivia {

using detail::Json;

bool Token::has_entity_type() const noexcept {
  return !ner.empty() && ner != "O" && ner != "NONE";
}

std::size_t AnnotatedSentence::root_index() const {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_root()) return i;
  }
  throw Error(ErrorKind::NoRoot, "sentence " + sentence_id);
}

EntityRecord placeholder_entity(const std::string& entity_id) {
  EntityRecord e;
  e.entity_id = entity_id;
  e.display_name = entity_id;
  e.aliases = {entity_id};
  return e;
}

namespace {

constexpr std::array<std::pair<BlockKind, std::string_view>, 7> kBlockNames = {{
    {BlockKind::paragraph, "paragraph"},
    {BlockKind::infobox, "infobox"},
    {BlockKind::table, "table"},
    {BlockKind::image_caption, "image_caption"},
    {BlockKind::list, "list"},
    {BlockKind::reference, "reference"},
    {BlockKind::link_cluster, "link_cluster"},
}};

}  // namespace

std::string_view to_string(BlockKind kind) noexcept {
  for (const auto& [k, name] : kBlockNames) {
    if (k == kind) return name;
  }
  return "paragraph";
}

std::optional<BlockKind> parse_block_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kBlockNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Trivia

std::vector<TriviaRecord> parse_trivia(std::istream& in) {
  std::vector<TriviaRecord> records;
  detail::for_each_json_line(in, [&](const Json& obj, std::size_t line) {
    TriviaRecord r;
    r.entity_id = detail::require_string(obj, "entity_id", line);
    r.text = normalize_text(detail::require_string(obj, "text", line));
    r.votes_interesting = detail::require_integer(obj, "votes_interesting", line);
    r.votes_total = detail::require_integer(obj, "votes_total", line);
    r.source = detail::optional_string(obj, "source", "", line);
    if (r.entity_id.empty()) {
      throw Error(ErrorKind::MalformedRecord, "empty entity_id", line);
    }
    if (r.text.empty()) {
      throw Error(ErrorKind::MalformedRecord, "empty text", line);
    }
    if (r.votes_interesting < 0 || r.votes_total < 0) {
      throw Error(ErrorKind::MalformedRecord, "negative vote count", line);
    }
    if (r.votes_interesting > r.votes_total) {
      throw Error(ErrorKind::VoteInversion,
                  std::to_string(r.votes_interesting) + " of " +
                      std::to_string(r.votes_total),
                  line);
    }
    records.push_back(std::move(r));
  });
  return records;
}

std::vector<TriviaRecord> load_trivia(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_trivia(in);
}

void write_trivia(std::ostream& out, std::span<const TriviaRecord> records) {
  for (const auto& r : records) {
    Json obj = {{"entity_id", r.entity_id},
                {"text", r.text},
                {"votes_interesting", r.votes_interesting},
                {"votes_total", r.votes_total}};
    if (!r.source.empty()) obj["source"] = r.source;
    out << obj.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Knowledge base

namespace {

struct PendingEntity {
  std::optional<std::string> display_name;
  std::set<std::string> aliases;
  std::map<std::string, std::set<std::string>> attributes;
  std::optional<double> popularity;
};

void merge_display_name(PendingEntity& e, const std::string& id,
                        const std::string& name, std::size_t line) {
  if (e.display_name && *e.display_name != name) {
    throw Error(ErrorKind::DuplicateEntityConflict,
                id + ": \"" + *e.display_name + "\" vs \"" + name + "\"", line);
  }
  e.display_name = name;
}

void add_value(PendingEntity& e, const std::string& attribute,
               const std::string& raw_value, std::size_t line) {
  if (attribute.empty()) {
    throw Error(ErrorKind::MalformedRecord, "empty attribute name", line);
  }
  std::string value = normalize_text(raw_value);
  if (value.empty()) {
    throw Error(ErrorKind::MalformedRecord, "empty attribute value", line);
  }
  if (attribute == "__alias") {
    e.aliases.insert(std::move(value));
  } else {
    e.attributes[attribute].insert(std::move(value));
  }
}

}  // namespace

KnowledgeBase parse_knowledge_base(std::istream& in) {
  std::map<std::string, PendingEntity> pending;
  detail::for_each_json_line(in, [&](const Json& obj, std::size_t line) {
    std::string id = detail::require_string(obj, "entity_id", line);
    if (id.empty()) {
      throw Error(ErrorKind::MalformedRecord, "empty entity_id", line);
    }
    PendingEntity& e = pending[id];
    if (auto it = obj.find("display_name"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw Error(ErrorKind::MalformedRecord, "display_name must be a string",
                    line);
      }
      merge_display_name(e, id, normalize_text(it->get<std::string>()), line);
    }
    if (auto it = obj.find("popularity"); it != obj.end() && !it->is_null()) {
      if (!it->is_number() || it->get<double>() < 0) {
        throw Error(ErrorKind::MalformedRecord,
                    "popularity must be a non-negative number", line);
      }
      double p = it->get<double>();
      e.popularity = e.popularity ? std::max(*e.popularity, p) : p;
    }
    if (obj.contains("attribute")) {
      add_value(e, detail::require_string(obj, "attribute", line),
                detail::require_string(obj, "value", line), line);
    }
    if (auto it = obj.find("aliases"); it != obj.end()) {
      if (!it->is_array()) {
        throw Error(ErrorKind::MalformedRecord, "aliases must be an array", line);
      }
      for (const auto& a : *it) {
        if (!a.is_string()) {
          throw Error(ErrorKind::MalformedRecord, "alias must be a string", line);
        }
        add_value(e, "__alias", a.get<std::string>(), line);
      }
    }
    if (auto it = obj.find("attributes"); it != obj.end()) {
      if (!it->is_object()) {
        throw Error(ErrorKind::MalformedRecord, "attributes must be an object",
                    line);
      }
      for (const auto& [name, values] : it->items()) {
        if (values.is_string()) {
          add_value(e, name, values.get<std::string>(), line);
          continue;
        }
        if (!values.is_array()) {
          throw Error(ErrorKind::MalformedRecord,
                      "attribute values must be strings", line);
        }
        for (const auto& v : values) {
          if (!v.is_string()) {
            throw Error(ErrorKind::MalformedRecord,
                        "attribute values must be strings", line);
          }
          add_value(e, name, v.get<std::string>(), line);
        }
      }
    }
  });

  KnowledgeBase kb;
  for (auto& [id, p] : pending) {
    EntityRecord e;
    e.entity_id = id;
    e.display_name = p.display_name.value_or(id);
    p.aliases.insert(e.display_name);
    e.aliases.assign(p.aliases.begin(), p.aliases.end());
    e.attributes = std::move(p.attributes);
    e.popularity = p.popularity;
    kb.emplace(id, std::move(e));
  }
  return kb;
}

KnowledgeBase load_knowledge_base(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_knowledge_base(in);
}

// ---------------------------------------------------------------------------
// Annotations

namespace {

Token parse_token(const Json& obj, std::size_t line) {
  if (!obj.is_object()) {
    throw Error(ErrorKind::MalformedRecord, "token must be an object", line);
  }
  Token t;
  t.text = normalize_text(detail::require_string(obj, "text", line));
  t.pos = detail::require_string(obj, "pos", line);
  t.head = static_cast<int>(detail::require_integer(obj, "head", line));
  t.lemma = detail::optional_string(obj, "lemma", "", line);
  if (t.lemma.empty()) t.lemma = unicode_lower(t.text);
  t.deprel = detail::optional_string(obj, "deprel", "dep", line);
  t.ner = detail::optional_string(obj, "ner", "O", line);
  if (t.text.empty()) {
    throw Error(ErrorKind::MalformedRecord, "empty token text", line);
  }
  if (t.pos.empty()) {
    throw Error(ErrorKind::MalformedRecord, "empty POS tag", line);
  }
  return t;
}

void check_tree(AnnotatedSentence& s, std::size_t line) {
  const auto n = static_cast<int>(s.tokens.size());
  std::optional<int> root;
  for (int i = 0; i < n; ++i) {
    Token& t = s.tokens[static_cast<std::size_t>(i)];
    if (t.head == kRootHead) {
      if (!root) {
        root = i;
      }
      continue;
    }
    if (t.head < kRootHead || t.head >= n || t.head == i) {
      throw Error(ErrorKind::DanglingHead,
                  "token " + std::to_string(i) + " of sentence " +
                      s.sentence_id + " has head " + std::to_string(t.head),
                  line);
    }
  }
  if (!root) {
    throw Error(ErrorKind::NoRoot, "sentence " + s.sentence_id, line);
  }
  std::size_t extra = 0;
  for (int i = *root + 1; i < n; ++i) {
    Token& t = s.tokens[static_cast<std::size_t>(i)];
    if (t.head == kRootHead) {
      t.head = *root;
      ++extra;
    }
  }
  if (extra > 0) {
    spdlog::warn("sentence {} (line {}): {} extra ROOT token(s) re-attached to "
                 "token {}",
                 s.sentence_id, line, extra, *root);
  }
}

void check_mentions(const AnnotatedSentence& s, std::size_t line) {
  if (!s.mentions) return;
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>
      chains;
  for (const auto& m : *s.mentions) {
    if (m.start >= m.end || m.end > s.tokens.size()) {
      throw Error(ErrorKind::MalformedRecord,
                  "mention span [" + std::to_string(m.start) + "," +
                      std::to_string(m.end) + ") out of range",
                  line);
    }
    chains[m.chain_id].emplace_back(m.start, m.end);
  }
  for (auto& [chain, spans] : chains) {
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i) {
      if (spans[i].first < spans[i - 1].second) {
        throw Error(ErrorKind::MalformedRecord,
                    "overlapping mentions in chain " + chain, line);
      }
    }
  }
}

}  // namespace

std::vector<AnnotatedSentence> parse_annotations(std::istream& in) {
  std::vector<AnnotatedSentence> sentences;
  detail::for_each_json_line(in, [&](const Json& obj, std::size_t line) {
    AnnotatedSentence s;
    s.entity_id = detail::require_string(obj, "entity_id", line);
    s.sentence_id = detail::require_string(obj, "sentence_id", line);
    s.raw = normalize_text(detail::require_string(obj, "raw", line));
    const Json& tokens = detail::require(obj, "tokens", line);
    if (!tokens.is_array() || tokens.empty()) {
      throw Error(ErrorKind::MalformedRecord, "tokens must be a non-empty array",
                  line);
    }
    for (const auto& t : tokens) s.tokens.push_back(parse_token(t, line));

    if (auto it = obj.find("mentions"); it != obj.end() && !it->is_null()) {
      if (!it->is_array()) {
        throw Error(ErrorKind::MalformedRecord, "mentions must be an array",
                    line);
      }
      std::vector<Mention> mentions;
      for (const auto& m : *it) {
        if (!m.is_object()) {
          throw Error(ErrorKind::MalformedRecord, "mention must be an object",
                      line);
        }
        std::int64_t start = detail::require_integer(m, "start", line);
        std::int64_t end = detail::require_integer(m, "end", line);
        if (start < 0 || end < 0) {
          throw Error(ErrorKind::MalformedRecord, "negative mention bound", line);
        }
        const Json& flag = detail::require(m, "in_sentence", line);
        if (!flag.is_boolean()) {
          throw Error(ErrorKind::MalformedRecord, "in_sentence must be boolean",
                      line);
        }
        mentions.push_back(Mention{static_cast<std::size_t>(start),
                                   static_cast<std::size_t>(end),
                                   detail::require_string(m, "chain_id", line),
                                   flag.get<bool>()});
      }
      s.mentions = std::move(mentions);
    }
    if (auto it = obj.find("gold_label"); it != obj.end() && !it->is_null()) {
      if (!it->is_number_integer() ||
          (it->get<int>() != 0 && it->get<int>() != 1)) {
        throw Error(ErrorKind::MalformedRecord, "gold_label must be 0 or 1",
                    line);
      }
      s.gold_label = it->get<int>();
    }
    check_tree(s, line);
    check_mentions(s, line);
    sentences.push_back(std::move(s));
  });
  return sentences;
}

std::vector<AnnotatedSentence> load_annotations(
    const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_annotations(in);
}

void write_annotations(std::ostream& out,
                       std::span<const AnnotatedSentence> sentences) {
  for (const auto& s : sentences) {
    Json tokens = Json::array();
    for (const auto& t : s.tokens) {
      tokens.push_back({{"text", t.text},
                        {"lemma", t.lemma},
                        {"pos", t.pos},
                        {"head", t.head},
                        {"deprel", t.deprel},
                        {"ner", t.ner}});
    }
    Json obj = {{"entity_id", s.entity_id},
                {"sentence_id", s.sentence_id},
                {"raw", s.raw},
                {"tokens", std::move(tokens)}};
    if (s.mentions) {
      Json mentions = Json::array();
      for (const auto& m : *s.mentions) {
        mentions.push_back({{"start", m.start},
                            {"end", m.end},
                            {"chain_id", m.chain_id},
                            {"in_sentence", m.in_sentence}});
      }
      obj["mentions"] = std::move(mentions);
    }
    if (s.gold_label) obj["gold_label"] = *s.gold_label;
    out << obj.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Pages

std::vector<PageDocument> parse_pages(std::istream& in) {
  std::vector<PageDocument> pages;
  detail::for_each_json_line(in, [&](const Json& obj, std::size_t line) {
    PageDocument page;
    page.entity_id = detail::require_string(obj, "entity_id", line);
    const Json& blocks = detail::require(obj, "blocks", line);
    if (!blocks.is_array()) {
      throw Error(ErrorKind::MalformedRecord, "blocks must be an array", line);
    }
    for (const auto& b : blocks) {
      if (!b.is_object()) {
        throw Error(ErrorKind::MalformedRecord, "block must be an object", line);
      }
      std::string kind_name = detail::require_string(b, "kind", line);
      auto kind = parse_block_kind(kind_name);
      if (!kind) {
        throw Error(ErrorKind::MalformedRecord,
                    "unknown block kind \"" + kind_name + "\"", line);
      }
      page.blocks.push_back(
          PageBlock{*kind, normalize_text(detail::require_string(b, "text", line))});
    }
    pages.push_back(std::move(page));
  });
  return pages;
}

std::vector<PageDocument> load_pages(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_pages(in);
}

}  // namespace trivia
