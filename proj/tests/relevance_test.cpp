#include "storycut/relevance.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "storycut/util.hpp"
#include "test_support.hpp"

using namespace storycut;
using storycut::testing::make_turn_corpus;

TEST(SocialRelevance, CollinearVectorsScoreOne) {
  const std::vector<double> rep = {0.8, 0.2, 0.0};
  const std::vector<double> unit = {1.6, 0.4, 0.0};
  const auto sr = social_relevance(unit, rep);
  ASSERT_TRUE(sr.has_value());
  EXPECT_NEAR(*sr, 1.0, 1e-12);
}

TEST(SocialRelevance, DisjointSupportScoresZero) {
  const std::vector<double> rep = {0.8, 0.0};
  const std::vector<double> unit = {0.0, 3.0};
  const auto sr = social_relevance(unit, rep);
  ASSERT_TRUE(sr.has_value());
  EXPECT_DOUBLE_EQ(*sr, 0.0);
}

TEST(SocialRelevance, SoliloquyIsUndefined) {
  const std::vector<double> rep = {0.8, 0.2};
  const std::vector<double> zero = {0.0, 0.0};
  EXPECT_FALSE(social_relevance(zero, rep).has_value());
}

TEST(ShotSize, MedianOfDetections) {
  FaceFrames frames = {0.2, 0.5, 0.4, std::nullopt, 0.9};
  EXPECT_DOUBLE_EQ(shot_size(frames), 0.45);
}

TEST(ShotSize, NoDetectionScoresZero) {
  FaceFrames frames{};
  EXPECT_DOUBLE_EQ(shot_size(frames), 0.0);
}

TEST(ShotSize, ClampedToOne) {
  FaceFrames frames = {1.4, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  EXPECT_DOUBLE_EQ(shot_size(frames), 1.0);
}

TEST(LsuShotSize, MeanOverShots) {
  const std::vector<double> sizes = {0.3, 0.5, 0.7};
  EXPECT_DOUBLE_EQ(lsu_shot_size(sizes, Lsu{0, 1, 0, 0, 0}), 0.4);
  EXPECT_DOUBLE_EQ(lsu_shot_size(sizes, Lsu{2, 2, 0, 0, 0}), 0.7);
}

namespace {

Corpus chroma_corpus(const std::vector<std::array<double, 12>>& frames) {
  Corpus corpus = make_turn_corpus(1, 1000000, {{0, 1000, "A"}});
  for (std::size_t i = 0; i < frames.size(); ++i)
    corpus.chroma.push_back({static_cast<std::int64_t>(i) * 500, frames[i]});
  corpus.finalize();
  return corpus;
}

std::array<double, 12> uniform_frame() {
  std::array<double, 12> c;
  c.fill(1.0 / 12.0);
  return c;
}

std::array<double, 12> one_hot(int note) {
  std::array<double, 12> c{};
  c[note] = 1.0;
  return c;
}

}  // namespace

TEST(Musicality, UniformConstantChromaScoresZero) {
  const Corpus corpus = chroma_corpus({uniform_frame(), uniform_frame(), uniform_frame()});
  EXPECT_NEAR(musicality_raw(corpus, 0, 1500), 0.0, 1e-12);
}

TEST(Musicality, OneHotConstantEqualsClosedForm) {
  const Corpus corpus = chroma_corpus({one_hot(3), one_hot(3), one_hot(3)});
  EXPECT_NEAR(musicality_raw(corpus, 0, 1500), std::sqrt(11.0) / 12.0, 1e-12);
  EXPECT_NEAR(musicality_raw(corpus, 0, 1500), 0.27639, 1e-5);
}

TEST(Musicality, AlternatingNotesScoreStrictlyLower) {
  const Corpus alternating =
      chroma_corpus({one_hot(3), one_hot(7), one_hot(3), one_hot(7)});
  const Corpus constant = chroma_corpus({one_hot(3), one_hot(3), one_hot(3), one_hot(3)});
  const double m_alt = musicality_raw(alternating, 0, 2000);
  const double m_const = musicality_raw(constant, 0, 2000);
  EXPECT_LT(m_alt, m_const);
  // D_notes unchanged, D_time is sqrt(2) per consecutive pair
  EXPECT_NEAR(m_alt, std::sqrt(11.0) / 12.0 - std::sqrt(2.0), 1e-12);
}

TEST(Musicality, EmptySpanScoresZeroAndSingleFrameHasNoTimeTerm) {
  const Corpus corpus = chroma_corpus({one_hot(0)});
  EXPECT_DOUBLE_EQ(musicality_raw(corpus, 900000, 950000), 0.0);
  EXPECT_NEAR(musicality_raw(corpus, 0, 400), std::sqrt(11.0) / 12.0, 1e-12);
}

TEST(NormalizeMusicality, MinMax) {
  const std::vector<double> raws = {0.0, 1.0, 2.0};
  const auto m = normalize_musicality(raws);
  EXPECT_DOUBLE_EQ(m[0], 0.0);
  EXPECT_DOUBLE_EQ(m[1], 0.5);
  EXPECT_DOUBLE_EQ(m[2], 1.0);
}

TEST(NormalizeMusicality, DegenerateRangeMapsToHalf) {
  const std::vector<double> raws = {0.3, 0.3, 0.3};
  for (const double m : normalize_musicality(raws)) EXPECT_DOUBLE_EQ(m, 0.5);
}

TEST(NormalizeMusicality, NegativeRawsSupported) {
  const std::vector<double> raws = {-0.1, 0.3};
  const auto m = normalize_musicality(raws);
  EXPECT_DOUBLE_EQ(m[0], 0.0);
  EXPECT_DOUBLE_EQ(m[1], 1.0);
}

TEST(CombinedRelevance, FullWeightsAtFullScores) {
  EXPECT_NEAR(combined_relevance(1.0, 1.0, 1.0, kFullWeights), 1.0, 1e-12);
}

TEST(CombinedRelevance, StyleWeightsIgnoreSocial) {
  EXPECT_NEAR(combined_relevance(std::nullopt, 0.6, 0.2, kStyleWeights), 0.4, 1e-12);
  EXPECT_NEAR(combined_relevance(0.99, 0.6, 0.2, kStyleWeights), 0.4, 1e-12);
}

TEST(CombinedRelevance, ConvexCombinationOfEqualScores) {
  EXPECT_NEAR(combined_relevance(0.5, 0.5, 0.5, kFullWeights), 0.5, 1e-12);
}

TEST(CombinedRelevance, UndefinedSocialRelevanceRejected) {
  try {
    combined_relevance(std::nullopt, 0.5, 0.5, kFullWeights);
    FAIL() << "expected UndefinedSocialRelevance";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndefinedSocialRelevance);
  }
}

TEST(CombinedRelevance, BitIndependentOfSocialWhenWeightIsZero) {
  const double a = combined_relevance(0.123456, 0.61, 0.37, kStyleWeights);
  const double b = combined_relevance(0.987654, 0.61, 0.37, kStyleWeights);
  const double c = combined_relevance(std::nullopt, 0.61, 0.37, kStyleWeights);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(CombinedRelevance, MonotoneInEachFeature) {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const double sr = rng.next_unit(), ss = rng.next_unit(), m = rng.next_unit();
    const double base = combined_relevance(sr, ss, m, kFullWeights);
    EXPECT_LE(base, combined_relevance(std::min(1.0, sr + 0.1), ss, m, kFullWeights) + 1e-15);
    EXPECT_LE(base, combined_relevance(sr, std::min(1.0, ss + 0.1), m, kFullWeights) + 1e-15);
    EXPECT_LE(base, combined_relevance(sr, ss, std::min(1.0, m + 0.1), kFullWeights) + 1e-15);
    EXPECT_GE(base, 0.0);
    EXPECT_LE(base, 1.0 + 1e-15);
  }
}

TEST(Weights, ValidationRules) {
  EXPECT_NO_THROW(kFullWeights.validate());
  EXPECT_NO_THROW(kStyleWeights.validate());
  EXPECT_THROW((Weights{0.5, 0.5, 0.5}.validate()), std::invalid_argument);
  EXPECT_THROW((Weights{-0.1, 0.6, 0.5}.validate()), std::invalid_argument);
}
