#include "trivia/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "trivia/annotate.hpp"
#include "trivia/text.hpp"

namespace trivia {

namespace fs = std::filesystem;

std::string_view to_string(Stage stage) noexcept {
  switch (stage) {
    case Stage::ingest: return "ingest";
    case Stage::grading: return "grading";
    case Stage::featurize: return "featurize";
    case Stage::train: return "train";
    case Stage::selection: return "selection";
    case Stage::rank: return "rank";
  }
  return "?";
}

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

}  // namespace

std::string_view to_string(BaselineKind kind) noexcept {
  switch (kind) {
    case BaselineKind::random: return "random";
    case BaselineKind::suppos_best: return "suppos-best";
    case BaselineKind::suppos_worst: return "suppos-worst";
    case BaselineKind::suppos_random: return "suppos-random";
    case BaselineKind::classifier: return "classifier";
  }
  return "?";
}

BaselineKind parse_baseline_kind(std::string_view name) {
  for (auto kind : {BaselineKind::random, BaselineKind::suppos_best,
                    BaselineKind::suppos_worst, BaselineKind::suppos_random,
                    BaselineKind::classifier}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown baseline \"" + std::string(name) + "\"");
}

void RunConfig::validate() const {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (baseline_runs < 1) {
    throw Error(ErrorKind::InvalidArgument, "baseline_runs must be at least 1");
  }
  if (!(ranker.c > 0.0)) throw Error(ErrorKind::NonPositiveC, "C must be positive");
  if (!(ranker.epsilon > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
  }
  grading.validate();
  SelectionConfig::for_domain(domain).validate();
}

// ---------------------------------------------------------------------------

AnnotationIndex::AnnotationIndex(std::vector<AnnotatedSentence> sentences)
    : sentences_(std::move(sentences)) {
  for (std::size_t i = 0; i < sentences_.size(); ++i) {
    by_text_.emplace(
        std::pair{sentences_[i].entity_id, normalize_text(sentences_[i].raw)}, i);
  }
}

AnnotationIndex AnnotationIndex::load(const fs::path& path) {
  return AnnotationIndex(load_annotations(path));
}

const AnnotatedSentence* AnnotationIndex::find(const std::string& entity_id,
                                               const std::string& raw) const {
  auto it = by_text_.find({entity_id, normalize_text(raw)});
  return it == by_text_.end() ? nullptr : &sentences_[it->second];
}

const EntityRecord& entity_or_placeholder(const KnowledgeBase& kb,
                                          const std::string& entity_id,
                                          EntityRecord& scratch) {
  auto it = kb.find(entity_id);
  if (it != kb.end()) return it->second;
  scratch = placeholder_entity(entity_id);
  return scratch;
}

std::vector<TrainingItem> training_items(std::span<const GradedTrivia> graded,
                                         const KnowledgeBase& kb,
                                         const AnnotationIndex& annotations) {
  std::vector<TrainingItem> items;
  std::map<std::string, std::size_t> ordinal;
  std::size_t fallbacks = 0;
  for (const auto& g : graded) {
    const auto& entity_id = g.record.entity_id;
    EntityRecord scratch;
    const EntityRecord& entity = entity_or_placeholder(kb, entity_id, scratch);
    const std::size_t n = ++ordinal[entity_id];
    TrainingItem item;
    if (const auto* found = annotations.find(entity_id, g.record.text)) {
      item.sentence = *found;
    } else {
      item.sentence = fallback_annotate(g.record.text, entity,
                                        entity_id + ":t" + std::to_string(n));
      ++fallbacks;
    }
    item.entity = entity;
    item.grade = g.grade;
    items.push_back(std::move(item));
  }
  if (fallbacks > 0 && annotations.size() > 0) {
    spdlog::warn("{} training trivia had no annotation; used the fallback annotator",
                 fallbacks);
  }
  return items;
}

CandidatePool prepare_candidates(std::span<const PageDocument> pages,
                                 const KnowledgeBase& kb,
                                 const AnnotationIndex& annotations,
                                 const SelectionConfig& selection) {
  CandidatePool out;
  std::size_t fallbacks = 0;
  for (const auto& page : pages) {
    EntityRecord scratch;
    const EntityRecord& entity = entity_or_placeholder(kb, page.entity_id, scratch);
    std::vector<AnnotatedSentence> sentences;
    std::size_t n = 0;
    for (const auto& paragraph : extract_cct(page)) {
      for (const auto& raw : split_sentences(paragraph)) {
        ++n;
        if (const auto* found = annotations.find(page.entity_id, raw)) {
          sentences.push_back(*found);
          continue;
        }
        try {
          sentences.push_back(fallback_annotate(
              raw, entity, page.entity_id + ":s" + std::to_string(n)));
          ++fallbacks;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::EmptyInput) throw;
        }
      }
    }
    auto kept = select_candidates(sentences, entity, selection);
    if (kept.empty()) {
      spdlog::warn("{}: every sentence was dropped by candidate selection",
                   page.entity_id);
    }
    spdlog::info("{}: {} sentences, {} candidates", page.entity_id,
                 sentences.size(), kept.size());
    out.pool.insert(out.pool.end(), sentences.begin(), sentences.end());
    out.candidates.insert(out.candidates.end(), kept.begin(), kept.end());
  }
  if (fallbacks > 0 && annotations.size() > 0) {
    spdlog::warn("{} page sentences had no annotation; used the fallback annotator",
                 fallbacks);
  }
  return out;
}

std::vector<FeatureVector> featurize_sentences(
    std::span<const AnnotatedSentence> sentences, const KnowledgeBase& kb,
    const FeatureSpace& space, const Lexicons& lex) {
  std::vector<FeatureVector> vectors;
  vectors.reserve(sentences.size());
  for (const auto& s : sentences) {
    EntityRecord scratch;
    vectors.push_back(featurize_item(
        s, entity_or_placeholder(kb, s.entity_id, scratch), space, lex));
  }
  return vectors;
}

namespace {

// Splits items by group in first-appearance order.
template <typename T, typename KeyFn>
std::vector<std::pair<std::string, std::vector<T>>> group_in_order(
    std::span<const T> items, KeyFn key) {
  std::vector<std::pair<std::string, std::vector<T>>> groups;
  std::map<std::string, std::size_t> position;
  for (const auto& item : items) {
    const std::string& id = key(item);
    auto [it, inserted] = position.emplace(id, groups.size());
    if (inserted) groups.emplace_back(id, std::vector<T>{});
    groups[it->second].second.push_back(item);
  }
  return groups;
}

void truncate(RankedList& list, std::size_t k) {
  if (list.entries.size() > k) list.entries.resize(k);
}

}  // namespace

std::vector<RankedList> rank_candidates(std::span<const AnnotatedSentence> candidates,
                                        const KnowledgeBase& kb,
                                        const FeatureSpace& space,
                                        const RankingModel& model,
                                        const Lexicons& lex, std::size_t k) {
  const auto vectors = featurize_sentences(candidates, kb, space, lex);
  std::vector<RankedList> lists;
  for (const auto& [group, members] : group_in_order<FeatureVector>(
           vectors, [](const FeatureVector& v) -> const std::string& {
             return v.group_id;
           })) {
    RankedList list = rank(model, space, members);
    truncate(list, k);
    lists.push_back(std::move(list));
  }
  return lists;
}

std::vector<std::vector<RankedList>> run_baseline(
    BaselineKind kind, const CandidatePool& pool, const KnowledgeBase& kb,
    std::span<const FeatureVector> train_vectors, const FeatureSpace& space,
    const Lexicons& lex, const RunConfig& config) {
  auto by_entity = [](const AnnotatedSentence& s) -> const std::string& {
    return s.entity_id;
  };
  std::vector<std::vector<RankedList>> runs;
  const int seeded_runs = config.baseline_runs;
  switch (kind) {
    case BaselineKind::random: {
      // Drawn from every core-content sentence, before candidate selection.
      const auto groups = group_in_order<AnnotatedSentence>(pool.pool, by_entity);
      for (int r = 0; r < seeded_runs; ++r) {
        std::vector<RankedList> lists;
        for (const auto& [group, members] : groups) {
          std::vector<std::string> ids;
          for (const auto& s : members) ids.push_back(s.sentence_id);
          lists.push_back(baseline_random(group, ids, config.k,
                                          config.ranker.seed + r));
        }
        runs.push_back(std::move(lists));
      }
      break;
    }
    case BaselineKind::suppos_best:
    case BaselineKind::suppos_worst:
    case BaselineKind::suppos_random: {
      const SupposMode mode = kind == BaselineKind::suppos_best    ? SupposMode::best
                              : kind == BaselineKind::suppos_worst ? SupposMode::worst
                                                                   : SupposMode::random;
      const int n_runs = mode == SupposMode::random ? seeded_runs : 1;
      const auto groups =
          group_in_order<AnnotatedSentence>(pool.candidates, by_entity);
      for (int r = 0; r < n_runs; ++r) {
        std::vector<RankedList> lists;
        for (const auto& [group, members] : groups) {
          std::vector<SupposItem> items;
          for (const auto& s : members) {
            items.push_back({s.sentence_id, superlative_count(s, lex), s.gold_label});
          }
          RankedList list =
              baseline_suppos(group, items, mode, config.ranker.seed + r);
          truncate(list, config.k);
          lists.push_back(std::move(list));
        }
        runs.push_back(std::move(lists));
      }
      break;
    }
    case BaselineKind::classifier: {
      const auto test = featurize_sentences(pool.candidates, kb, space, lex);
      auto lists = baseline_classifier(train_vectors, test, space.size(),
                                       config.ranker, config.grading.scale);
      // Back to entity page order rather than lexicographic.
      std::map<std::string, RankedList> by_group;
      for (auto& l : lists) by_group.emplace(l.group_id, std::move(l));
      std::vector<RankedList> ordered;
      for (const auto& [group, members] :
           group_in_order<AnnotatedSentence>(pool.candidates, by_entity)) {
        RankedList list = std::move(by_group.at(group));
        for (auto& e : list.entries) e.item_id = members[e.index].sentence_id;
        truncate(list, config.k);
        ordered.push_back(std::move(list));
      }
      runs.push_back(std::move(ordered));
      break;
    }
  }
  return runs;
}

// ---------------------------------------------------------------------------

void write_ranked_tsv(std::ostream& out, std::span<const RankedList> lists,
                      const std::map<std::string, std::string>& text_by_id) {
  for (const auto& list : lists) {
    std::size_t rank_no = 0;
    for (const auto& e : list.entries) {
      double s = e.score;
      if (std::fabs(s) < 5e-7) s = 0.0;
      char score[64];
      std::snprintf(score, sizeof score, "%.6f", s);
      auto text = text_by_id.find(e.item_id);
      out << list.group_id << '\t' << ++rank_no << '\t' << score << '\t'
          << e.item_id << '\t' << (text == text_by_id.end() ? "" : text->second)
          << '\n';
    }
  }
}

std::vector<RankedList> parse_ranked_tsv(std::istream& in) {
  std::vector<RankedList> lists;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
      const auto tab = line.find('\t', pos);
      if (tab == std::string::npos) {
        throw Error(ErrorKind::MalformedRecord, "expected 5 tab-separated fields",
                    line_no);
      }
      fields.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    RankedEntry entry;
    try {
      std::size_t used = 0;
      const auto rank_no = std::stoul(fields[1], &used);
      if (used != fields[1].size() || rank_no == 0) throw std::invalid_argument("");
      entry.index = rank_no - 1;
      entry.score = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Error(ErrorKind::MalformedRecord, "bad rank or score", line_no);
    }
    entry.item_id = fields[3];
    if (lists.empty() || lists.back().group_id != fields[0]) {
      lists.push_back({fields[0], {}});
    }
    lists.back().entries.push_back(std::move(entry));
  }
  return lists;
}

std::vector<RankedList> load_ranked_tsv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return parse_ranked_tsv(in);
}

GoldStandard gold_from(std::span<const AnnotatedSentence> sentences) {
  GoldStandard gold;
  for (const auto& s : sentences) {
    if (!s.gold_label) continue;
    gold.labels[s.sentence_id] = *s.gold_label;
    if (*s.gold_label == 1) ++gold.positives[s.entity_id];
  }
  return gold;
}

EvalReport evaluate_runs(std::span<const std::vector<RankedList>> runs,
                         const GoldStandard& gold, std::size_t k) {
  std::vector<EvalReport> reports;
  for (const auto& lists : runs) {
    std::vector<JudgedList> judged;
    for (const auto& list : lists) {
      auto it = gold.positives.find(list.group_id);
      judged.push_back(
          judge(list, gold.labels, it == gold.positives.end() ? 0 : it->second));
    }
    reports.push_back(evaluate_run(judged, k));
  }
  return reports.size() == 1 ? reports.front() : average_reports(reports);
}

// ---------------------------------------------------------------------------

TrainArtifacts run_train_phase(const RunConfig& config, const KnowledgeBase& kb,
                               const AnnotationIndex& annotations) {
  const Lexicons lex = Lexicons::defaults();
  TrainArtifacts out;
  const auto trivia =
      run_in_stage(Stage::ingest, [&] { return load_trivia(config.trivia); });
  out.graded = run_in_stage(Stage::grading,
                        [&] { return grade_corpus(trivia, config.grading); });
  spdlog::info("graded {} of {} trivia", out.graded.size(), trivia.size());

  run_in_stage(Stage::featurize, [&] {
    const auto items = training_items(out.graded, kb, annotations);
    out.space = fit_feature_space(items, lex, config.blocks);
    out.vectors.reserve(items.size());
    for (const auto& item : items) {
      out.vectors.push_back(
          featurize_item(item.sentence, item.entity, out.space, lex, item.grade));
    }
    spdlog::info("feature space {} with {} columns", config.blocks.to_string(),
                 out.space.size());
  });

  run_in_stage(Stage::train, [&] {
    TrainOptions options = config.ranker;
    if (config.grid) {
      out.grid = grid_search(out.vectors, out.space.size(), *config.grid,
                             config.folds, options);
      options.c = out.grid->best.c;
      options.epsilon = out.grid->best.epsilon;
      spdlog::info("grid search picked C={} e={} (mean NDCG@10 {:.4f})", options.c,
                   options.epsilon, out.grid->best.mean_ndcg);
    }
    out.model = train(out.vectors, out.space, options);
    const auto& r = out.model.train_report;
    spdlog::info("pairs={} epochs={} objective={:.6f} violated={}{}", r.pair_count,
                 r.iterations, r.final_objective, r.violated_pairs,
                 r.converged ? "" : " (max_iter reached)");
  });

  if (!config.output_dir.empty()) {
    run_in_stage(Stage::train, [&] {
      fs::create_directories(config.output_dir);
      auto graded_out = open_output(config.output_dir / "graded.jsonl");
      write_graded(graded_out, out.graded);
      out.space.save(config.output_dir / "feature_space.json");
      auto letor = open_output(config.output_dir / "train.letor");
      write_letor(letor, out.vectors);
      out.model.save(config.output_dir / "model.json");
    });
  }
  return out;
}

RetrievalResult run_retrieval_phase(const RunConfig& config,
                                    const KnowledgeBase& kb,
                                    const AnnotationIndex& annotations,
                                    const TrainArtifacts& trained) {
  const Lexicons lex = Lexicons::defaults();
  RetrievalResult out;
  const auto pages =
      run_in_stage(Stage::ingest, [&] { return load_pages(config.pages); });
  out.pool = run_in_stage(Stage::selection, [&] {
    return prepare_candidates(pages, kb, annotations,
                              SelectionConfig::for_domain(config.domain));
  });
  out.ranked = run_in_stage(Stage::rank, [&] {
    return rank_candidates(out.pool.candidates, kb, trained.space, trained.model,
                           lex, config.k);
  });
  if (!config.output_dir.empty()) {
    run_in_stage(Stage::rank, [&] {
      fs::create_directories(config.output_dir);
      auto cand = open_output(config.output_dir / "candidates.jsonl");
      write_annotations(cand, out.pool.candidates);
      auto pool = open_output(config.output_dir / "pool.jsonl");
      write_annotations(pool, out.pool.pool);
      std::map<std::string, std::string> texts;
      for (const auto& s : out.pool.pool) texts[s.sentence_id] = s.raw;
      auto ranked = open_output(config.output_dir / "ranked.tsv");
      write_ranked_tsv(ranked, out.ranked, texts);
    });
  }
  return out;
}

RunAllResult run_all(const RunConfig& config) {
  run_in_stage(Stage::ingest, [&] { config.validate(); });
  const Lexicons lex = Lexicons::defaults();
  const KnowledgeBase kb =
      run_in_stage(Stage::ingest, [&] { return load_knowledge_base(config.kb); });
  const AnnotationIndex annotations = run_in_stage(Stage::ingest, [&] {
    return config.annotations.empty() ? AnnotationIndex{}
                                      : AnnotationIndex::load(config.annotations);
  });

  RunAllResult result;
  result.trained = run_train_phase(config, kb, annotations);
  result.retrieval = run_retrieval_phase(config, kb, annotations, result.trained);
  const auto& pool = result.retrieval.pool;

  result.systems.push_back({"wtm[" + config.blocks.to_string() + "]",
                            {result.retrieval.ranked},
                            std::nullopt});
  for (const auto& blocks : config.ablations) {
    RunConfig variant = config;
    variant.blocks = blocks;
    variant.output_dir.clear();
    variant.grid.reset();
    spdlog::info("training ablation {}", blocks.to_string());
    const auto trained = run_train_phase(variant, kb, annotations);
    auto ranked = run_in_stage(Stage::rank, [&] {
      return rank_candidates(pool.candidates, kb, trained.space, trained.model, lex,
                             config.k);
    });
    result.systems.push_back(
        {"wtm[" + blocks.to_string() + "]", {std::move(ranked)}, std::nullopt});
  }
  for (auto kind : config.baselines) {
    auto runs = run_in_stage(Stage::rank, [&] {
      return run_baseline(kind, pool, kb, result.trained.vectors,
                          result.trained.space, lex, config);
    });
    result.systems.push_back({std::string(to_string(kind)), std::move(runs),
                              std::nullopt});
  }

  const GoldStandard gold = gold_from(pool.pool);
  if (gold.labels.empty()) {
    spdlog::warn("no gold labels on page sentences; skipping evaluation");
  } else {
    for (auto& system : result.systems) {
      system.report = evaluate_runs(system.runs, gold, config.k);
    }
    const EvalReport& reference = *result.systems.front().report;
    for (std::size_t i = 1; i < result.systems.size(); ++i) {
      auto& report = *result.systems[i].report;
      if (reference.per_group.size() >= 2) {
        report.significance = compare_runs(reference, report);
      }
    }
    for (const auto& s : result.systems) {
      spdlog::info("{}: P@{}={:.4f} NDCG@{}={:.4f}", s.name, config.k,
                   s.report->mean_p_at_k, config.k, s.report->mean_ndcg_at_k);
    }
  }

  if (!config.output_dir.empty()) {
    run_in_stage(Stage::rank, [&] {
      std::map<std::string, std::string> texts;
      for (const auto& s : pool.pool) texts[s.sentence_id] = s.raw;
      nlohmann::ordered_json summary;
      summary["k"] = config.k;
      summary["reference"] = result.systems.front().name;
      auto& systems = summary["systems"] = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < result.systems.size(); ++i) {
        const auto& s = result.systems[i];
        if (i > 0) {
          std::string stem = "ranked." + s.name;
          for (char& ch : stem) {
            if (ch == '[' || ch == ']' || ch == '+') ch = ch == '+' ? '_' : '-';
          }
          while (!stem.empty() && stem.back() == '-') stem.pop_back();
          for (std::size_t r = 0; r < s.runs.size(); ++r) {
            const std::string name =
                s.runs.size() == 1 ? stem + ".tsv"
                                   : stem + ".seed" + std::to_string(r) + ".tsv";
            auto out = open_output(config.output_dir / name);
            write_ranked_tsv(out, s.runs[r], texts);
          }
        }
        if (s.report) {
          auto report = nlohmann::ordered_json::parse(report_to_json(*s.report));
          report["runs"] = s.runs.size();
          systems[s.name] = std::move(report);
        }
      }
      if (!systems.empty()) {
        auto out = open_output(config.output_dir / "eval.json");
        out << summary.dump(2) << '\n';
      }
    });
  }
  return result;
}

}  // namespace trivia
