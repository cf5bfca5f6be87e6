// trivia: command-line driver for grading, candidate selection, feature
// extraction, ranking, baselines and evaluation.

#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trivia/annotate.hpp"
#include "trivia/pipeline.hpp"
#include "trivia/text.hpp"

namespace fs = std::filesystem;
using namespace trivia;

namespace {

// Generic failure outside any pipeline stage (bad arguments, eval input).
constexpr int kGenericFailure = 1;

struct GradingFlags {
  bool two_grade = false;
  std::optional<std::size_t> max_chars;
  std::optional<std::size_t> min_trivia;
  std::int64_t base_min_votes = 5;
  std::int64_t high_min_votes = 100;
  double high_lr_threshold = 0.6;

  void attach(CLI::App* app) {
    app->add_flag("--two-grade", two_grade, "Binary classes (LR > 0.5) instead of 5 grades");
    app->add_option("--max-chars", max_chars, "Drop trivia longer than this (code points)");
    app->add_option("--min-trivia", min_trivia, "Drop entities with fewer trivia");
    app->add_option("--base-min-votes", base_min_votes, "Minimum total votes")
        ->capture_default_str();
    app->add_option("--high-min-votes", high_min_votes,
                    "Minimum total votes above the high-LR threshold")
        ->capture_default_str();
    app->add_option("--high-lr-threshold", high_lr_threshold)->capture_default_str();
  }

  GradingConfig config() const {
    GradingConfig cfg;
    cfg.scale = two_grade ? GradeScale::two_grade : GradeScale::five_grade;
    cfg.max_chars = max_chars;
    cfg.min_trivia_per_entity = min_trivia;
    cfg.base_min_votes = base_min_votes;
    cfg.high_min_votes = high_min_votes;
    cfg.high_lr_threshold = high_lr_threshold;
    cfg.validate();
    return cfg;
  }
};

struct TrainFlags {
  double c = 17.0;
  double epsilon = 0.21;
  int max_iter = 1000;
  std::uint64_t seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--c", c, "Margin / training-error trade-off")->capture_default_str();
    app->add_option("--epsilon", epsilon, "Projected-gradient stopping tolerance")
        ->capture_default_str();
    app->add_option("--max-iter", max_iter, "Maximum epochs")->capture_default_str();
    app->add_option("--seed", seed)->capture_default_str();
  }

  TrainOptions options() const { return {c, epsilon, max_iter, seed}; }
};

// Writes to the file, or to stdout when the path is empty or "-".
template <typename F>
void with_output(const std::string& path, F&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  fn(out);
}

AnnotationIndex load_index(const std::string& path) {
  return path.empty() ? AnnotationIndex{} : AnnotationIndex::load(path);
}

std::map<std::string, std::string> texts_of(std::span<const AnnotatedSentence> s) {
  std::map<std::string, std::string> out;
  for (const auto& x : s) out[x.sentence_id] = x.raw;
  return out;
}

// Fills options that were not given on the command line from a key=value
// file, so explicit flags always win.
void apply_config_file(CLI::App* app, const std::string& path) {
  CLI::ConfigTOML reader;
  std::vector<CLI::ConfigItem> items;
  try {
    items = reader.from_file(path);
  } catch (const CLI::Error& e) {
    throw Error(ErrorKind::Io, "cannot read config " + path + ": " + e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    std::string key = item.name;
    std::replace(key.begin(), key.end(), '_', '-');
    CLI::Option* opt = app->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw Error(ErrorKind::InvalidArgument, "unknown config key \"" + item.name + "\"");
    }
    if (opt->count() > 0) continue;
    for (const auto& v : item.inputs) opt->add_result(v);
    opt->run_callback();
  }
}

ConfusionTable parse_table(const std::string& text) {
  std::vector<std::int64_t> cells;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || p != part.data() + part.size()) {
      throw Error(ErrorKind::InvalidArgument, "table cells must be integers: " + text);
    }
    cells.push_back(v);
  }
  if (cells.size() != 4) {
    throw Error(ErrorKind::InvalidArgument, "table must be a,b,c,d: " + text);
  }
  return {cells[0], cells[1], cells[2], cells[3]};
}

void print_report(const std::string& out_path, const EvalReport& report) {
  with_output(out_path, [&](std::ostream& out) { out << report_to_json(report) << '\n'; });
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("trivia");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::cfg::load_env_levels();

  CLI::App app{"Mine, rank and evaluate entity trivia"};
  app.require_subcommand(1);

  // grade
  auto* grade_cmd = app.add_subcommand("grade", "Filter and grade voted trivia");
  std::string grade_trivia, grade_out;
  GradingFlags grade_flags;
  grade_cmd->add_option("--trivia", grade_trivia, "Trivia JSONL")->required();
  grade_cmd->add_option("--out", grade_out, "Graded JSONL (default stdout)");
  grade_flags.attach(grade_cmd);

  // annotate
  auto* annotate_cmd =
      app.add_subcommand("annotate", "Run the built-in shallow annotator");
  std::string ann_trivia, ann_pages, ann_kb, ann_out;
  auto* ann_trivia_opt =
      annotate_cmd->add_option("--trivia", ann_trivia, "Trivia JSONL to annotate");
  annotate_cmd->add_option("--pages", ann_pages, "Pages JSONL to annotate")
      ->excludes(ann_trivia_opt);
  annotate_cmd->add_option("--kb", ann_kb, "Knowledge base JSONL")->required();
  annotate_cmd->add_option("--out", ann_out, "Annotations JSONL (default stdout)");

  // select
  auto* select_cmd = app.add_subcommand("select", "Extract and select candidate sentences");
  std::string sel_pages, sel_kb, sel_ann, sel_out, sel_pool, sel_domain = "movie";
  select_cmd->add_option("--pages", sel_pages)->required();
  select_cmd->add_option("--kb", sel_kb)->required();
  select_cmd->add_option("--annotations", sel_ann, "Annotations JSONL (optional)");
  select_cmd->add_option("--domain", sel_domain, "movie or celebrity")->capture_default_str();
  select_cmd->add_option("--out", sel_out, "Candidates JSONL (default stdout)");
  select_cmd->add_option("--pool-out", sel_pool, "Every core-content sentence, JSONL");
  bool sel_no_mentions = false;
  select_cmd->add_flag("--no-mentions", sel_no_mentions,
                       "Ignore ingested coreference mentions; use the pronoun rules");

  // featurize
  auto* feat_cmd = app.add_subcommand("featurize", "Build LETOR feature vectors");
  std::string feat_graded, feat_cand, feat_kb, feat_ann, feat_space, feat_out;
  std::string feat_blocks = "U+L+E";
  bool feat_fit = false;
  auto* graded_opt =
      feat_cmd->add_option("--graded", feat_graded, "Graded trivia JSONL (training)");
  feat_cmd->add_option("--candidates", feat_cand, "Annotated sentences JSONL (test)")
      ->excludes(graded_opt);
  feat_cmd->add_option("--kb", feat_kb)->required();
  feat_cmd->add_option("--annotations", feat_ann, "Annotations for graded trivia");
  feat_cmd->add_option("--space", feat_space, "Feature-space JSON")->required();
  feat_cmd->add_flag("--fit", feat_fit, "Fit the space on --graded and write it");
  feat_cmd->add_option("--blocks", feat_blocks, "Feature blocks when fitting")
      ->capture_default_str();
  feat_cmd->add_option("--out", feat_out, "LETOR output (default stdout)");

  // train
  auto* train_cmd = app.add_subcommand("train", "Train the pairwise ranker");
  std::string train_letor, train_space, train_model, train_grid;
  int train_folds = 5;
  TrainFlags train_flags;
  train_cmd->add_option("--letor", train_letor, "Graded LETOR vectors")->required();
  train_cmd->add_option("--space", train_space, "Feature-space JSON")->required();
  train_cmd->add_option("--model", train_model, "Model JSON to write")->required();
  train_flags.attach(train_cmd);
  train_cmd->add_option("--grid", train_grid, "Grid search \"C1,C2,...xE1,E2,...\"");
  train_cmd->add_option("--folds", train_folds, "Cross-validation folds")
      ->capture_default_str();

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "Rank candidate sentences");
  std::string rank_model, rank_space, rank_cand, rank_kb, rank_out;
  std::size_t rank_k = 10;
  rank_cmd->add_option("--model", rank_model)->required();
  rank_cmd->add_option("--space", rank_space)->required();
  rank_cmd->add_option("--candidates", rank_cand, "Candidates JSONL")->required();
  rank_cmd->add_option("--kb", rank_kb)->required();
  rank_cmd->add_option("--k", rank_k, "Rows per entity")->capture_default_str();
  rank_cmd->add_option("--out", rank_out, "Ranked TSV (default stdout)");

  // baseline
  auto* base_cmd = app.add_subcommand("baseline", "Rank with a comparison baseline");
  std::string base_kind, base_cand, base_pool, base_kb, base_space, base_letor, base_out;
  std::size_t base_k = 10;
  int base_runs = 5;
  bool base_two_grade = false;
  TrainFlags base_train;
  base_cmd->add_option("--kind", base_kind,
                       "random, suppos-best, suppos-worst, suppos-random, classifier")
      ->required();
  base_cmd->add_option("--candidates", base_cand, "Candidates JSONL")->required();
  base_cmd->add_option("--pool", base_pool, "Pre-selection sentences (random baseline)");
  base_cmd->add_option("--kb", base_kb);
  base_cmd->add_option("--space", base_space, "Feature space (classifier)");
  base_cmd->add_option("--train-letor", base_letor, "Graded training vectors (classifier)");
  base_cmd->add_flag("--two-grade", base_two_grade, "Training grades are 0/1 classes");
  base_cmd->add_option("--k", base_k)->capture_default_str();
  base_cmd->add_option("--runs", base_runs, "Seeds for the seeded baselines")
      ->capture_default_str();
  base_train.attach(base_cmd);
  base_cmd->add_option("--out", base_out,
                       "Ranked TSV; seeded runs get .seed<N> before the extension");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "P@k, Recall@k and NDCG@k of ranked runs");
  std::vector<std::string> eval_ranked, eval_compare;
  std::string eval_gold, eval_out;
  std::size_t eval_k = 10;
  eval_cmd->add_option("--ranked", eval_ranked, "Ranked TSV(s); several are averaged")
      ->required();
  eval_cmd->add_option("--compare", eval_compare,
                       "Second system's TSV(s) for a paired t-test on P@k");
  eval_cmd->add_option("--gold", eval_gold, "Annotations JSONL with gold labels")
      ->required();
  eval_cmd->add_option("--k", eval_k)->capture_default_str();
  eval_cmd->add_option("--out", eval_out, "Report JSON (default stdout)");

  // kappa
  auto* kappa_cmd = app.add_subcommand("kappa", "Cohen's kappa of a 2x2 agreement table");
  std::string kappa_table;
  kappa_cmd->add_option("table", kappa_table, "a,b,c,d")->required();

  // run-all
  auto* all_cmd = app.add_subcommand("run-all", "Train, retrieve, run baselines, evaluate");
  std::string all_config, all_trivia, all_ann, all_pages, all_kb, all_out = "out";
  std::string all_domain = "movie", all_blocks = "U+L+E", all_grid;
  std::vector<std::string> all_baselines, all_ablations;
  std::size_t all_k = 10;
  int all_folds = 5, all_runs = 5;
  GradingFlags all_grading;
  TrainFlags all_train;
  all_cmd->add_option("--config", all_config, "key = value file; flags override it");
  all_cmd->add_option("--trivia", all_trivia);
  all_cmd->add_option("--annotations", all_ann);
  all_cmd->add_option("--pages", all_pages);
  all_cmd->add_option("--kb", all_kb);
  all_cmd->add_option("--out-dir", all_out)->capture_default_str();
  all_cmd->add_option("--domain", all_domain)->capture_default_str();
  all_cmd->add_option("--blocks", all_blocks)->capture_default_str();
  all_cmd->add_option("--grid", all_grid);
  all_cmd->add_option("--folds", all_folds)->capture_default_str();
  all_cmd->add_option("--k", all_k)->capture_default_str();
  all_cmd->add_option("--baseline", all_baselines, "Repeatable");
  all_cmd->add_option("--ablate", all_ablations, "Extra block sets to compare, repeatable");
  all_cmd->add_option("--baseline-runs", all_runs)->capture_default_str();
  all_grading.attach(all_cmd);
  all_train.attach(all_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (grade_cmd->parsed()) {
      const auto cfg = run_in_stage(Stage::grading, [&] { return grade_flags.config(); });
      const auto trivia =
          run_in_stage(Stage::ingest, [&] { return load_trivia(grade_trivia); });
      const auto graded =
          run_in_stage(Stage::grading, [&] { return grade_corpus(trivia, cfg); });
      with_output(grade_out, [&](std::ostream& out) { write_graded(out, graded); });
      spdlog::info("graded {} of {} trivia", graded.size(), trivia.size());

    } else if (annotate_cmd->parsed()) {
      const auto kb = run_in_stage(Stage::ingest, [&] { return load_knowledge_base(ann_kb); });
      std::vector<AnnotatedSentence> out;
      if (!ann_trivia.empty()) {
        const auto trivia =
            run_in_stage(Stage::ingest, [&] { return load_trivia(ann_trivia); });
        std::map<std::string, std::size_t> ordinal;
        for (const auto& t : trivia) {
          EntityRecord scratch;
          const auto& entity = entity_or_placeholder(kb, t.entity_id, scratch);
          const std::size_t n = ++ordinal[t.entity_id];
          out.push_back(run_in_stage(Stage::featurize, [&] {
            return fallback_annotate(t.text, entity, t.entity_id + ":t" + std::to_string(n));
          }));
        }
      } else if (!ann_pages.empty()) {
        const auto pages = run_in_stage(Stage::ingest, [&] { return load_pages(ann_pages); });
        out = run_in_stage(Stage::selection, [&] {
          return prepare_candidates(pages, kb, {}, SelectionConfig::movie_defaults()).pool;
        });
      } else {
        throw Error(ErrorKind::InvalidArgument, "annotate needs --trivia or --pages");
      }
      with_output(ann_out, [&](std::ostream& o) { write_annotations(o, out); });

    } else if (select_cmd->parsed()) {
      const auto kb = run_in_stage(Stage::ingest, [&] { return load_knowledge_base(sel_kb); });
      const auto pages = run_in_stage(Stage::ingest, [&] { return load_pages(sel_pages); });
      const auto index = run_in_stage(Stage::ingest, [&] { return load_index(sel_ann); });
      const auto pool = run_in_stage(Stage::selection, [&] {
        SelectionConfig selection = SelectionConfig::for_domain(sel_domain);
        selection.use_mentions_when_present = !sel_no_mentions;
        return prepare_candidates(pages, kb, index, selection);
      });
      with_output(sel_out, [&](std::ostream& o) { write_annotations(o, pool.candidates); });
      if (!sel_pool.empty()) {
        with_output(sel_pool, [&](std::ostream& o) { write_annotations(o, pool.pool); });
      }

    } else if (feat_cmd->parsed()) {
      const Lexicons lex = Lexicons::defaults();
      const auto kb = run_in_stage(Stage::ingest, [&] { return load_knowledge_base(feat_kb); });
      std::vector<FeatureVector> vectors;
      if (!feat_graded.empty()) {
        const auto graded =
            run_in_stage(Stage::ingest, [&] { return load_graded(feat_graded); });
        const auto index = run_in_stage(Stage::ingest, [&] { return load_index(feat_ann); });
        run_in_stage(Stage::featurize, [&] {
          const auto items = training_items(graded, kb, index);
          FeatureSpace space;
          if (feat_fit) {
            space = fit_feature_space(items, lex, BlockSet::parse(feat_blocks));
            space.save(feat_space);
          } else {
            space = FeatureSpace::load(feat_space);
          }
          for (const auto& item : items) {
            vectors.push_back(featurize_item(item.sentence, item.entity, space, lex, item.grade));
          }
        });
      } else if (!feat_cand.empty()) {
        if (feat_fit) throw Error(ErrorKind::InvalidArgument, "--fit needs --graded");
        const auto sentences =
            run_in_stage(Stage::ingest, [&] { return load_annotations(feat_cand); });
        const auto space =
            run_in_stage(Stage::ingest, [&] { return FeatureSpace::load(feat_space); });
        vectors = run_in_stage(Stage::featurize, [&] {
          std::vector<FeatureVector> out;
          for (const auto& s : sentences) {
            EntityRecord scratch;
            out.push_back(featurize_item(s, entity_or_placeholder(kb, s.entity_id, scratch),
                                         space, lex, s.gold_label));
          }
          return out;
        });
      } else {
        throw Error(ErrorKind::InvalidArgument, "featurize needs --graded or --candidates");
      }
      with_output(feat_out, [&](std::ostream& o) { write_letor(o, vectors); });

    } else if (train_cmd->parsed()) {
      const auto vectors = run_in_stage(Stage::ingest, [&] { return load_letor(train_letor); });
      const auto space =
          run_in_stage(Stage::ingest, [&] { return FeatureSpace::load(train_space); });
      const auto model = run_in_stage(Stage::train, [&] {
        TrainOptions options = train_flags.options();
        if (!train_grid.empty()) {
          const auto grid = grid_search(vectors, space.size(), GridSpec::parse(train_grid),
                                        train_folds, options);
          for (const auto& cell : grid.cells) {
            spdlog::info("C={} e={} mean NDCG@10={:.4f} folds={}", cell.c, cell.epsilon,
                         cell.mean_ndcg, cell.folds_used);
          }
          options.c = grid.best.c;
          options.epsilon = grid.best.epsilon;
        }
        auto m = train(vectors, space, options);
        m.save(train_model);
        return m;
      });
      const auto& r = model.train_report;
      std::cout << "pairs " << r.pair_count << "\nepochs " << r.iterations << "\nobjective "
                << r.final_objective << "\nviolated_pairs " << r.violated_pairs
                << "\nconverged " << (r.converged ? "yes" : "no") << '\n';

    } else if (rank_cmd->parsed()) {
      const Lexicons lex = Lexicons::defaults();
      const auto kb = run_in_stage(Stage::ingest, [&] { return load_knowledge_base(rank_kb); });
      const auto model = run_in_stage(Stage::ingest, [&] { return RankingModel::load(rank_model); });
      const auto space =
          run_in_stage(Stage::ingest, [&] { return FeatureSpace::load(rank_space); });
      const auto cand = run_in_stage(Stage::ingest, [&] { return load_annotations(rank_cand); });
      if (rank_k < 1) throw StageError(Stage::rank, Error(ErrorKind::InvalidArgument, "k < 1"));
      const auto lists = run_in_stage(Stage::rank, [&] {
        return rank_candidates(cand, kb, space, model, lex, rank_k);
      });
      with_output(rank_out, [&](std::ostream& o) { write_ranked_tsv(o, lists, texts_of(cand)); });

    } else if (base_cmd->parsed()) {
      const Lexicons lex = Lexicons::defaults();
      const BaselineKind kind = parse_baseline_kind(base_kind);
      CandidatePool pool;
      pool.candidates =
          run_in_stage(Stage::ingest, [&] { return load_annotations(base_cand); });
      pool.pool = base_pool.empty()
                      ? pool.candidates
                      : run_in_stage(Stage::ingest, [&] { return load_annotations(base_pool); });
      KnowledgeBase kb;
      FeatureSpace space;
      std::vector<FeatureVector> train_vectors;
      if (kind == BaselineKind::classifier) {
        if (base_kb.empty() || base_space.empty() || base_letor.empty()) {
          throw Error(ErrorKind::InvalidArgument,
                      "classifier baseline needs --kb, --space and --train-letor");
        }
        kb = run_in_stage(Stage::ingest, [&] { return load_knowledge_base(base_kb); });
        space = run_in_stage(Stage::ingest, [&] { return FeatureSpace::load(base_space); });
        train_vectors = run_in_stage(Stage::ingest, [&] { return load_letor(base_letor); });
      }
      RunConfig cfg;
      cfg.k = base_k;
      cfg.baseline_runs = base_runs;
      cfg.ranker = base_train.options();
      cfg.grading.scale = base_two_grade ? GradeScale::two_grade : GradeScale::five_grade;
      cfg.validate();
      const auto runs = run_in_stage(Stage::rank, [&] {
        return run_baseline(kind, pool, kb, train_vectors, space, lex, cfg);
      });
      const auto texts = texts_of(pool.pool);
      for (std::size_t r = 0; r < runs.size(); ++r) {
        std::string path = base_out;
        if (runs.size() > 1 && !path.empty() && path != "-") {
          fs::path p(path);
          path = (p.parent_path() / (p.stem().string() + ".seed" + std::to_string(r) +
                                     p.extension().string()))
                     .string();
        }
        with_output(path, [&](std::ostream& o) { write_ranked_tsv(o, runs[r], texts); });
      }

    } else if (eval_cmd->parsed()) {
      const auto gold_sentences = load_annotations(eval_gold);
      const GoldStandard gold = gold_from(gold_sentences);
      auto load_runs = [](const std::vector<std::string>& paths) {
        std::vector<std::vector<RankedList>> runs;
        for (const auto& p : paths) runs.push_back(load_ranked_tsv(p));
        return runs;
      };
      EvalReport report = evaluate_runs(load_runs(eval_ranked), gold, eval_k);
      if (!eval_compare.empty()) {
        const EvalReport other = evaluate_runs(load_runs(eval_compare), gold, eval_k);
        report.significance = compare_runs(report, other);
      }
      print_report(eval_out, report);

    } else if (kappa_cmd->parsed()) {
      const KappaResult k = kappa(parse_table(kappa_table));
      std::cout << "p_o " << k.p_o << "\np_e " << k.p_e << "\nkappa " << k.kappa
                << "\nband " << k.band << '\n';

    } else if (all_cmd->parsed()) {
      if (!all_config.empty()) apply_config_file(all_cmd, all_config);
      RunConfig cfg;
      cfg.trivia = all_trivia;
      cfg.annotations = all_ann;
      cfg.pages = all_pages;
      cfg.kb = all_kb;
      cfg.output_dir = all_out;
      cfg.domain = all_domain;
      cfg.k = all_k;
      cfg.folds = all_folds;
      cfg.baseline_runs = all_runs;
      cfg.ranker = all_train.options();
      run_in_stage(Stage::ingest, [&] {
        if (cfg.trivia.empty() || cfg.pages.empty() || cfg.kb.empty()) {
          throw Error(ErrorKind::InvalidArgument, "run-all needs trivia, pages and kb");
        }
        cfg.grading = all_grading.config();
        cfg.blocks = BlockSet::parse(all_blocks);
        if (!all_grid.empty()) cfg.grid = GridSpec::parse(all_grid);
        for (const auto& b : all_baselines) cfg.baselines.push_back(parse_baseline_kind(b));
        for (const auto& a : all_ablations) cfg.ablations.push_back(BlockSet::parse(a));
      });
      const RunAllResult result = run_all(cfg);
      for (const auto& s : result.systems) {
        if (!s.report) continue;
        std::cout << s.name << "\tP@" << cfg.k << '=' << s.report->mean_p_at_k << "\tNDCG@"
                  << cfg.k << '=' << s.report->mean_ndcg_at_k << '\n';
      }
    }
  } catch (const StageError& e) {
    spdlog::error("{} stage failed: {}", to_string(e.stage()), e.what());
    return e.exit_code();
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kGenericFailure;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kGenericFailure;
  }
  return 0;
}
