#include "trivia/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "trivia/error.hpp"
#include "trivia/porter.hpp"
#include "trivia/readability.hpp"
#include "trivia/text.hpp"

namespace trivia {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// BlockSet

BlockSet BlockSet::parse(std::string_view text) {
  BlockSet set{false, false, false};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t plus = text.find('+', pos);
    if (plus == std::string_view::npos) plus = text.size();
    std::string_view part = text.substr(pos, plus - pos);
    if (part == "U") {
      set.unigram = true;
    } else if (part == "L") {
      set.linguistic = true;
    } else if (part == "E") {
      set.entity = true;
    } else {
      throw Error(ErrorKind::InvalidArgument,
                  "feature blocks must be U, L, E joined by '+': " +
                      std::string(text));
    }
    pos = plus + 1;
  }
  return set;
}

std::string BlockSet::to_string() const {
  std::vector<std::string> parts;
  if (unigram) parts.emplace_back("U");
  if (linguistic) parts.emplace_back("L");
  if (entity) parts.emplace_back("E");
  return join(parts, "+");
}

bool BlockSet::contains(FeatureBlock block) const noexcept {
  switch (block) {
    case FeatureBlock::unigram: return unigram;
    case FeatureBlock::linguistic: return linguistic;
    case FeatureBlock::entity: return entity;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Feature extraction

std::vector<std::string> preprocess_tokens(const AnnotatedSentence& sentence,
                                           const Lexicons& lex) {
  std::vector<std::string> stems;
  for (const auto& token : sentence.tokens) {
    if (is_punctuation_token(token.text)) continue;
    std::string word = unicode_lower(token.text);
    while (!word.empty() && (word.front() == '\'' || word.front() == '"')) {
      word.erase(word.begin());
    }
    while (!word.empty() && (word.back() == '\'' || word.back() == '"')) {
      word.pop_back();
    }
    if (word.empty() || lex.stopwords.contains(word)) continue;
    stems.push_back(porter_stem(word));
  }
  return stems;
}

namespace {

constexpr std::string_view kFixedLinguistic[] = {
    "superPOS", "contradiction", "fog_low", "fog_mid", "fog_high"};

}  // namespace

NamedFeatures linguistic_features(const AnnotatedSentence& sentence,
                                  const Lexicons& lex) {
  NamedFeatures out;
  const std::size_t root = sentence.root_index();
  for (const auto& t : sentence.tokens) {
    if (lex.superlative_tags.contains(t.pos)) out.insert("superPOS");
    if (lex.contradictions.contains(unicode_lower(t.lemma))) {
      out.insert("contradiction");
    }
  }
  out.insert("root_" + unicode_lower(sentence.tokens[root].lemma));
  for (const auto& t : sentence.tokens) {
    if ((t.deprel == "nsubj" || t.deprel == "nsubjpass") &&
        t.head == static_cast<int>(root)) {
      out.insert("subj_" + unicode_lower(t.lemma));
      break;
    }
  }

  std::vector<std::vector<std::string>> one_sentence(1);
  for (const auto& t : sentence.tokens) one_sentence[0].push_back(t.text);
  FogBin bin = FogBin::low;
  try {
    bin = fog_index(one_sentence, lex.fog_low_max, lex.fog_mid_max).bin;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoWords) throw;
  }
  out.insert("fog_" + std::string(to_string(bin)));
  return out;
}

namespace {

struct EntitySpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string type;
};

std::vector<EntitySpan> entity_spans(const AnnotatedSentence& s) {
  std::vector<EntitySpan> spans;
  std::size_t i = 0;
  while (i < s.tokens.size()) {
    if (!s.tokens[i].has_entity_type()) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < s.tokens.size() && s.tokens[j].ner == s.tokens[i].ner) ++j;
    spans.push_back(EntitySpan{i, j, s.tokens[i].ner});
    i = j;
  }
  return spans;
}

// True when the span's own head token attaches directly to the root.
bool span_under_root(const AnnotatedSentence& s, const EntitySpan& span,
                     std::size_t root) {
  if (root >= span.begin && root < span.end) return false;
  for (std::size_t k = span.begin; k < span.end; ++k) {
    const int head = s.tokens[k].head;
    const bool inside = head >= static_cast<int>(span.begin) &&
                        head < static_cast<int>(span.end);
    if (!inside) return head == static_cast<int>(root);
  }
  return false;
}

}  // namespace

NamedFeatures entity_features(const AnnotatedSentence& sentence,
                              const EntityRecord& entity) {
  std::map<std::string, std::set<std::string>> attributes_by_value;
  for (const auto& [attr, values] : entity.attributes) {
    for (const auto& v : values) attributes_by_value[match_key(v)].insert(attr);
  }
  std::optional<std::size_t> root;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (sentence.tokens[i].is_root()) {
      root = i;
      break;
    }
  }

  NamedFeatures out;
  for (const auto& span : entity_spans(sentence)) {
    out.insert(span.type);
    std::vector<std::string> words;
    for (std::size_t k = span.begin; k < span.end; ++k) {
      words.push_back(sentence.tokens[k].text);
    }
    const bool under_root = root && span_under_root(sentence, span, *root);
    auto it = attributes_by_value.find(match_key(words));
    if (it != attributes_by_value.end()) {
      for (const auto& attr : it->second) {
        out.insert("entity_" + attr);
        if (under_root) out.insert("underroot_entity_" + attr);
      }
    } else {
      out.insert("entity_unlinked_" + span.type);
      if (under_root) out.insert("underroot_unlinked_" + unicode_lower(span.type));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// FeatureSpace

void FeatureSpace::add(const std::string& name, FeatureBlock block) {
  if (frozen_) {
    throw Error(ErrorKind::InvalidArgument,
                "cannot add \"" + name + "\" to a frozen feature space");
  }
  pending_.emplace(name, block);
}

void FeatureSpace::set_idf(const std::string& term, double idf) {
  if (frozen_) {
    throw Error(ErrorKind::InvalidArgument, "feature space is frozen");
  }
  idf_[term] = idf;
}

void FeatureSpace::set_lexicon_checksums(std::string stopwords,
                                         std::string contradictions) {
  stopwords_sum_ = std::move(stopwords);
  contradictions_sum_ = std::move(contradictions);
}

void FeatureSpace::freeze() {
  if (frozen_) return;
  for (const auto& [name, block] : pending_) {
    if (block == FeatureBlock::unigram) {
      std::string term = name.substr(kUnigramPrefix.size());
      if (!idf_.contains(term)) {
        throw Error(ErrorKind::InvalidArgument, "unigram without IDF: " + term);
      }
    }
    name_to_index_.emplace(name, static_cast<std::uint32_t>(names_.size()));
    names_.push_back(name);
    block_tags_.push_back(block);
  }
  pending_.clear();
  frozen_ = true;
  checksum_ = sha256_hex(canonical_content());
}

std::optional<std::uint32_t> FeatureSpace::index_of(std::string_view name) const {
  auto it = name_to_index_.find(name);
  if (it == name_to_index_.end()) return std::nullopt;
  return it->second;
}

const std::string& FeatureSpace::name_of(std::uint32_t index) const {
  return names_.at(index);
}

FeatureBlock FeatureSpace::block_of(std::uint32_t index) const {
  return block_tags_.at(index);
}

std::optional<double> FeatureSpace::idf_of(std::string_view term) const {
  auto it = idf_.find(term);
  if (it == idf_.end()) return std::nullopt;
  return it->second;
}

namespace {

constexpr std::string_view kSpaceFormat = "trivia-feature-space";
constexpr int kSpaceVersion = 1;

Json content_json(const BlockSet& blocks, std::size_t doc_count,
                  const std::vector<std::string>& names,
                  const std::vector<FeatureBlock>& tags,
                  const std::map<std::string, double, std::less<>>& idf,
                  const std::string& stop_sum, const std::string& contra_sum) {
  Json features = Json::array();
  for (std::size_t i = 0; i < names.size(); ++i) {
    features.push_back({{"name", names[i]},
                        {"block", std::string(1, static_cast<char>(tags[i]))}});
  }
  Json idf_json = Json::object();
  for (const auto& [term, value] : idf) idf_json[term] = value;
  return Json{{"format", kSpaceFormat},
              {"version", kSpaceVersion},
              {"blocks", blocks.to_string()},
              {"doc_count", doc_count},
              {"features", std::move(features)},
              {"idf", std::move(idf_json)},
              {"lexicon_checksums",
               {{"stopwords", stop_sum}, {"contradictions", contra_sum}}}};
}

}  // namespace

std::string FeatureSpace::canonical_content() const {
  return content_json(blocks_, doc_count_, names_, block_tags_, idf_,
                      stopwords_sum_, contradictions_sum_)
      .dump();
}

std::string FeatureSpace::to_json() const {
  if (!frozen_) {
    throw Error(ErrorKind::UnfrozenSpace, "only frozen spaces are persisted");
  }
  Json j = content_json(blocks_, doc_count_, names_, block_tags_, idf_,
                        stopwords_sum_, contradictions_sum_);
  j["checksum"] = checksum_;
  return j.dump(1);
}

FeatureSpace FeatureSpace::from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
    if (j.at("format").get<std::string>() != kSpaceFormat) {
      throw Error(ErrorKind::MalformedRecord, "not a feature-space file");
    }
    if (j.at("version").get<int>() != kSpaceVersion) {
      throw Error(ErrorKind::MalformedRecord, "unsupported feature-space version");
    }
    FeatureSpace space(BlockSet::parse(j.at("blocks").get<std::string>()));
    space.doc_count_ = j.at("doc_count").get<std::size_t>();
    for (const auto& [term, value] : j.at("idf").items()) {
      space.idf_[term] = value.get<double>();
    }
    for (const auto& f : j.at("features")) {
      const std::string block = f.at("block").get<std::string>();
      if (block != "U" && block != "L" && block != "E") {
        throw Error(ErrorKind::MalformedRecord, "bad block tag " + block);
      }
      std::string name = f.at("name").get<std::string>();
      if (!space.names_.empty() && !(space.names_.back() < name)) {
        throw Error(ErrorKind::MalformedRecord,
                    "feature names must be sorted and unique");
      }
      space.name_to_index_.emplace(name,
                                   static_cast<std::uint32_t>(space.names_.size()));
      space.names_.push_back(std::move(name));
      space.block_tags_.push_back(static_cast<FeatureBlock>(block[0]));
    }
    const auto& sums = j.at("lexicon_checksums");
    space.stopwords_sum_ = sums.at("stopwords").get<std::string>();
    space.contradictions_sum_ = sums.at("contradictions").get<std::string>();
    space.frozen_ = true;
    space.checksum_ = sha256_hex(space.canonical_content());
    if (j.contains("checksum") &&
        j.at("checksum").get<std::string>() != space.checksum_) {
      throw Error(ErrorKind::SpaceMismatch, "feature-space checksum mismatch");
    }
    return space;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::MalformedRecord, e.what());
  }
}

void FeatureSpace::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << to_json() << '\n';
}

FeatureSpace FeatureSpace::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

// ---------------------------------------------------------------------------
// Vectors

double FeatureVector::dot(std::span<const double> weights) const {
  double sum = 0.0;
  for (const auto& [index, value] : entries) {
    if (index < weights.size()) sum += weights[index] * value;
  }
  return sum;
}

double FeatureVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& [index, value] : entries) sum += value * value;
  return sum;
}

FeatureSpace fit_feature_space(std::span<const TrainingItem> train,
                               const Lexicons& lex, BlockSet blocks) {
  if (train.empty()) {
    throw Error(ErrorKind::EmptyTrainingSet, "cannot fit a feature space");
  }
  FeatureSpace space(blocks);
  space.set_doc_count(train.size());
  space.set_lexicon_checksums(lex.stopwords_checksum(),
                              lex.contradictions_checksum());

  std::map<std::string, std::size_t> df;
  for (const auto& item : train) {
    auto stems = preprocess_tokens(item.sentence, lex);
    std::set<std::string> unique(stems.begin(), stems.end());
    for (const auto& s : unique) ++df[s];

    if (blocks.linguistic) {
      for (const auto& name : linguistic_features(item.sentence, lex)) {
        space.add(name, FeatureBlock::linguistic);
      }
    }
    if (blocks.entity) {
      for (const auto& name : entity_features(item.sentence, item.entity)) {
        space.add(name, FeatureBlock::entity);
      }
    }
  }
  if (blocks.linguistic) {
    for (auto name : kFixedLinguistic) {
      space.add(std::string(name), FeatureBlock::linguistic);
    }
  }
  if (blocks.unigram) {
    const double n = static_cast<double>(train.size());
    for (const auto& [term, count] : df) {
      space.set_idf(term,
                    std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
      space.add(std::string(kUnigramPrefix) + term, FeatureBlock::unigram);
    }
  }
  space.freeze();
  return space;
}

FeatureVector featurize_item(const AnnotatedSentence& sentence,
                             const EntityRecord& entity,
                             const FeatureSpace& space, const Lexicons& lex,
                             std::optional<int> grade) {
  if (!space.frozen()) {
    throw Error(ErrorKind::UnfrozenSpace, "featurize against a frozen space");
  }
  std::map<std::uint32_t, double> values;
  const BlockSet blocks = space.blocks();

  if (blocks.unigram) {
    std::map<std::string, int> tf;
    for (auto& stem : preprocess_tokens(sentence, lex)) ++tf[stem];
    std::vector<std::pair<std::uint32_t, double>> unigrams;
    double norm2 = 0.0;
    for (const auto& [term, count] : tf) {
      auto idf = space.idf_of(term);
      auto index = space.index_of(std::string(kUnigramPrefix) + term);
      if (!idf || !index) continue;
      const double w = static_cast<double>(count) * *idf;
      unigrams.emplace_back(*index, w);
      norm2 += w * w;
    }
    if (norm2 > 0.0) {
      const double norm = std::sqrt(norm2);
      for (const auto& [index, w] : unigrams) values[index] = w / norm;
    }
  }
  auto add_binary = [&](const NamedFeatures& names) {
    for (const auto& name : names) {
      if (auto index = space.index_of(name)) values[*index] = 1.0;
    }
  };
  if (blocks.linguistic) add_binary(linguistic_features(sentence, lex));
  if (blocks.entity) add_binary(entity_features(sentence, entity));

  FeatureVector v;
  v.group_id = sentence.entity_id;
  v.item_id = sentence.sentence_id;
  v.grade = grade;
  v.entries.reserve(values.size());
  for (const auto& [index, value] : values) {
    if (value != 0.0) v.entries.emplace_back(index, value);
  }
  return v;
}

}  // namespace trivia
