#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"
#include "trivia/error.hpp"
#include "trivia/pipeline.hpp"

using namespace trivia;
using trivia::testing::make_sentence;

namespace {

const std::filesystem::path kMini = TRIVIA_MINI_CORPUS;

RunConfig mini_config(const std::filesystem::path& out) {
  RunConfig cfg;
  cfg.trivia = kMini / "trivia.jsonl";
  cfg.annotations = kMini / "annotations.jsonl";
  cfg.pages = kMini / "pages.jsonl";
  cfg.kb = kMini / "kb.jsonl";
  cfg.output_dir = out;
  cfg.baselines = {BaselineKind::random};
  return cfg;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("trivia_unit_" + name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(RankedTsv, RoundTrip) {
  const std::vector<RankedList> lists{
      {"m1", {{"s2", 1.25, 1}, {"s1", -1e-9, 0}}},
      {"m2", {{"s9", -0.5, 0}}}};
  std::stringstream buffer;
  write_ranked_tsv(buffer, lists, {{"s2", "Second sentence."}});
  EXPECT_EQ(buffer.str(),
            "m1\t1\t1.250000\ts2\tSecond sentence.\n"
            "m1\t2\t0.000000\ts1\t\n"
            "m2\t1\t-0.500000\ts9\t\n");
  const auto back = parse_ranked_tsv(buffer);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].group_id, "m1");
  EXPECT_EQ(back[0].entries[0].item_id, "s2");
  EXPECT_EQ(back[0].entries[1].index, 1u);
  EXPECT_DOUBLE_EQ(back[1].entries[0].score, -0.5);
  std::stringstream bad("m1\t0\t1.0\ts\tx\n");
  EXPECT_THROW(parse_ranked_tsv(bad), Error);
}

TEST(AnnotationIndex, FindsByNormalizedText) {
  auto s = make_sentence("m", {{"Hello", "UH"}, {"world", "NN", 0}});
  s.raw = "Hello  world";
  const AnnotationIndex index({s});
  EXPECT_NE(index.find("m", "Hello world"), nullptr);
  EXPECT_EQ(index.find("other", "Hello world"), nullptr);
  EXPECT_EQ(index.size(), 1u);
}

TEST(BaselineKind, NamesRoundTrip) {
  for (auto kind : {BaselineKind::random, BaselineKind::suppos_best, BaselineKind::suppos_worst,
                    BaselineKind::suppos_random, BaselineKind::classifier}) {
    EXPECT_EQ(parse_baseline_kind(to_string(kind)), kind);
  }
  EXPECT_THROW(parse_baseline_kind("oracle"), Error);
}

TEST(RunInStage, WrapsErrorsWithStageCode) {
  try {
    run_in_stage(Stage::train, [] { throw Error(ErrorKind::NoPairs, "none"); });
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), Stage::train);
    EXPECT_EQ(e.exit_code(), 5);
    EXPECT_EQ(e.kind(), ErrorKind::NoPairs);
  }
}

TEST(RunAll, MissingInputFailsAtIngest) {
  auto cfg = mini_config(scratch_dir("missing"));
  cfg.kb = kMini / "absent.jsonl";
  try {
    run_all(cfg);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.exit_code(), 2);
  }
}

TEST(RunAll, MiniCorpusProducesArtifacts) {
  const auto out = scratch_dir("mini");
  const auto result = run_all(mini_config(out));
  EXPECT_TRUE(result.trained.model.train_report.converged);
  EXPECT_EQ(result.trained.model.space_checksum, result.trained.space.checksum());
  ASSERT_EQ(result.systems.size(), 2u);
  EXPECT_EQ(result.systems[0].name, "wtm[U+L+E]");
  EXPECT_EQ(result.systems[1].runs.size(), 5u);
  for (const auto& system : result.systems) {
    ASSERT_TRUE(system.report.has_value());
    EXPECT_EQ(system.report->per_group.size(), 2u);
  }
  for (auto name : {"graded.jsonl", "feature_space.json", "train.letor", "model.json",
                    "candidates.jsonl", "pool.jsonl", "ranked.tsv", "eval.json"}) {
    EXPECT_TRUE(std::filesystem::exists(out / name)) << name;
  }
  const auto ranked = load_ranked_tsv(out / "ranked.tsv");
  for (const auto& list : ranked) EXPECT_LE(list.entries.size(), 10u);
  std::filesystem::remove_all(out);
}
