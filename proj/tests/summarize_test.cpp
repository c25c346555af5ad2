#include "storycut/summarize.hpp"

#include <gtest/gtest.h>

#include "storycut/io.hpp"
#include "storycut/synthetic.hpp"
#include "test_support.hpp"

using namespace storycut;

namespace {

SynthSpec demo_spec() {
  SynthSpec spec;
  spec.phases = 3;
  spec.scenes_per_phase = 30;
  spec.buffer_scenes = 25;
  return spec;
}

const Corpus& demo_corpus() {
  static const Corpus corpus = synthesize_corpus(demo_spec());
  return corpus;
}

const std::vector<Lsu>& demo_lsus() {
  static const std::vector<Lsu> units = make_candidates(demo_corpus(), Params{});
  return units;
}

}  // namespace

TEST(AnalyzeCharacter, ThreePhaseCastsYieldThreeEpisodes) {
  const auto analysis = analyze_character(demo_corpus(), "Arya", Params{});
  EXPECT_EQ(analysis.episodes.size(), 3u);
}

TEST(BuildFullSummary, SingleCandidateFitsTheBudget) {
  // One scene, one 6-second dialogue unit, budget 25 s.
  Corpus corpus = storycut::testing::make_turn_corpus(
      1, 60000, {{1000, 3000, "Arya"}, {3000, 5000, "B"}, {5000, 7000, "Arya"}});
  corpus.shots.clear();
  for (int i = 0; i < 5; ++i) corpus.shots.push_back({i, i * 2000, (i + 1) * 2000});
  corpus.similarity_pairs = std::vector<std::pair<int, int>>{{0, 2}, {2, 4}, {0, 4}};
  corpus.finalize();

  const Params params;
  const auto units = make_candidates(corpus, params);
  ASSERT_EQ(units.size(), 1u);
  EXPECT_DOUBLE_EQ(units[0].duration_s(), 10.0);

  const Summary summary = build_full_summary(corpus, "Arya", params, units);
  ASSERT_EQ(summary.segments.size(), 1u);
  EXPECT_DOUBLE_EQ(summary.stats.duration_s, 10.0);
  EXPECT_EQ(summary.stats.n_candidates, 1);
  ASSERT_TRUE(summary.segments[0].episode.has_value());
  EXPECT_EQ(*summary.segments[0].episode, 0);
}

TEST(BuildFullSummary, PerEpisodeBudgetNeverExceeded) {
  const Summary summary = build_full_summary(demo_corpus(), "Arya", Params{}, demo_lsus());
  std::map<int, double> per_episode;
  for (const auto& seg : summary.segments) {
    ASSERT_TRUE(seg.episode.has_value());
    per_episode[*seg.episode] +=
        static_cast<double>(seg.end_ms - seg.start_ms) / 1000.0;
  }
  for (const auto& [episode, dur] : per_episode) EXPECT_LE(dur, 25.0 + 1e-9);
}

TEST(BuildFullSummary, DrawsFromEveryEpisodeWithCandidates) {
  const auto analysis = analyze_character(demo_corpus(), "Arya", Params{});
  const Summary summary = build_full_summary(demo_corpus(), "Arya", Params{}, demo_lsus());
  std::set<int> seen;
  for (const auto& seg : summary.segments) seen.insert(*seg.episode);
  EXPECT_EQ(seen.size(), analysis.episodes.size());
}

TEST(BuildFullSummary, SegmentsChronologicalAndNonOverlapping) {
  const Summary summary = build_full_summary(demo_corpus(), "Arya", Params{}, demo_lsus());
  for (std::size_t i = 1; i < summary.segments.size(); ++i) {
    EXPECT_LE(summary.segments[i - 1].start_ms, summary.segments[i].start_ms);
    EXPECT_LE(summary.segments[i - 1].last_shot, summary.segments[i].first_shot);
  }
}

TEST(BuildFullSummary, SoliloquiesExcludedFromFullPoolOnly) {
  const Summary full = build_full_summary(demo_corpus(), "Arya", Params{}, demo_lsus());
  const Summary sty =
      build_style_summary(demo_corpus(), "Arya", Params{}, full.stats.duration_s, demo_lsus());
  EXPECT_LT(full.stats.n_candidates, sty.stats.n_candidates);
}

TEST(BuildStyleSummary, EmptyPoolGivesEmptySummary) {
  Corpus corpus = storycut::testing::make_turn_corpus(1, 60000, {{1000, 3000, "Arya"}});
  corpus.similarity_pairs = std::vector<std::pair<int, int>>{};
  corpus.finalize();
  const Summary summary = build_style_summary(corpus, "Arya", Params{}, 25.0, {});
  EXPECT_TRUE(summary.segments.empty());
  EXPECT_DOUBLE_EQ(summary.stats.duration_s, 0.0);
}

TEST(BuildStyleSummary, RespectsTargetBudget) {
  const Summary full = build_full_summary(demo_corpus(), "Arya", Params{}, demo_lsus());
  const Summary sty =
      build_style_summary(demo_corpus(), "Arya", Params{}, full.stats.duration_s, demo_lsus());
  EXPECT_LE(sty.stats.duration_s, full.stats.duration_s + 1e-9);
}

TEST(BuildBaselineSummary, SeedDeterminism) {
  const Summary a =
      build_baseline_summary(demo_corpus(), "Arya", Params{}, 70.0, 42, demo_lsus());
  const Summary b =
      build_baseline_summary(demo_corpus(), "Arya", Params{}, 70.0, 42, demo_lsus());
  ASSERT_EQ(a.segments.size(), b.segments.size());
  for (std::size_t i = 0; i < a.segments.size(); ++i)
    EXPECT_EQ(a.segments[i].start_ms, b.segments[i].start_ms);
}

TEST(BuildBaselineSummary, DifferentSeedsDiffer) {
  const Summary base =
      build_baseline_summary(demo_corpus(), "Arya", Params{}, 70.0, 1, demo_lsus());
  bool any_differ = false;
  for (const std::uint64_t seed : {2, 3, 4, 5}) {
    const Summary other =
        build_baseline_summary(demo_corpus(), "Arya", Params{}, 70.0, seed, demo_lsus());
    if (other.segments.size() != base.segments.size()) {
      any_differ = true;
      break;
    }
    for (std::size_t i = 0; i < base.segments.size(); ++i)
      if (base.segments[i].start_ms != other.segments[i].start_ms) any_differ = true;
  }
  EXPECT_TRUE(any_differ);
}

TEST(BuildBaselineSummary, SingleCandidatePoolPicksIt) {
  Corpus corpus = storycut::testing::make_turn_corpus(
      1, 60000, {{1000, 3000, "Arya"}, {3000, 5000, "B"}, {5000, 7000, "Arya"}});
  corpus.shots.clear();
  for (int i = 0; i < 5; ++i) corpus.shots.push_back({i, i * 2000, (i + 1) * 2000});
  corpus.similarity_pairs = std::vector<std::pair<int, int>>{{0, 2}, {2, 4}, {0, 4}};
  corpus.finalize();
  const auto units = make_candidates(corpus, Params{});
  const Summary bsl = build_baseline_summary(corpus, "Arya", Params{}, 10.0, 7, units);
  ASSERT_EQ(bsl.segments.size(), 1u);
  EXPECT_DOUBLE_EQ(bsl.stats.duration_s, 10.0);
}

TEST(BuildBaselineSummary, LandsWithinTargetBand) {
  const Summary full = build_full_summary(demo_corpus(), "Arya", Params{}, demo_lsus());
  for (const std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const Summary bsl = build_baseline_summary(demo_corpus(), "Arya", Params{},
                                               full.stats.duration_s, seed, demo_lsus());
    EXPECT_GE(bsl.stats.duration_s, 0.95 * full.stats.duration_s);
    EXPECT_LE(bsl.stats.duration_s, 1.05 * full.stats.duration_s);
  }
}

TEST(SummaryStats, CompressionRateFormula) {
  // active-scene total 11,016 s against a 137.7 s summary: r = 80.0
  EXPECT_NEAR(11016.0 / 137.7, 80.0, 1e-9);
  const Summary full = build_full_summary(demo_corpus(), "Arya", Params{}, demo_lsus());
  const double active = detail::active_scene_seconds(demo_corpus(), "Arya");
  EXPECT_NEAR(full.stats.compression_rate, active / full.stats.duration_s, 1e-9);
}

TEST(PairwiseOverlap, IdenticalAndDisjoint) {
  Summary a;
  a.segments = {{0, 10000, 0, 1, {}}, {20000, 30000, 4, 5, {}}};
  EXPECT_NEAR(pairwise_overlap(a, a), 100.0, 1e-12);
  Summary b;
  b.segments = {{40000, 50000, 8, 9, {}}};
  EXPECT_DOUBLE_EQ(pairwise_overlap(a, b), 0.0);
  Summary empty;
  EXPECT_DOUBLE_EQ(pairwise_overlap(empty, empty), 0.0);
}

TEST(PairwiseOverlap, MeanDurationDenominator) {
  Summary a;
  a.segments = {{0, 10000, 0, 1, {}}};  // 10 s
  Summary b;
  b.segments = {{5000, 25000, 0, 3, {}}};  // 20 s, 5 s shared
  EXPECT_NEAR(pairwise_overlap(a, b), 100.0 * 5.0 / 15.0, 1e-12);
}

TEST(SummaryJson, RoundTrip) {
  const Summary full = build_full_summary(demo_corpus(), "Arya", Params{}, demo_lsus());
  const Json j = to_json(full);
  const Summary back = summary_from_json(j);
  EXPECT_EQ(back.kind, full.kind);
  EXPECT_EQ(back.character, full.character);
  ASSERT_EQ(back.segments.size(), full.segments.size());
  for (std::size_t i = 0; i < back.segments.size(); ++i) {
    EXPECT_EQ(back.segments[i].start_ms, full.segments[i].start_ms);
    EXPECT_EQ(back.segments[i].episode, full.segments[i].episode);
  }
  EXPECT_EQ(back.stats.n_selected, full.stats.n_selected);
}
