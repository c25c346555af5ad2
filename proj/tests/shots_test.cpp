#include "storycut/shots.hpp"

#include <gtest/gtest.h>

#include "storycut/oracles.hpp"
#include "storycut/util.hpp"

using namespace storycut;

namespace {

// Histogram with the given per-block bin masses, L1-normalized per block.
BlockHistogram make_hist(int grid, std::vector<std::vector<double>> blocks) {
  BlockHistogram h;
  h.grid = grid;
  h.bins = static_cast<int>(blocks[0].size());
  for (auto& block : blocks) {
    double sum = 0.0;
    for (double v : block) sum += v;
    for (double v : block) h.values.push_back(v / sum);
  }
  return h;
}

}  // namespace

TEST(HistogramDistance, IdenticalIsZero) {
  const auto h = make_hist(2, {{1, 2}, {3, 1}, {2, 2}, {1, 1}});
  EXPECT_DOUBLE_EQ(histogram_distance(h, h), 0.0);
}

TEST(HistogramDistance, DisjointSupportIsOne) {
  const auto a = make_hist(1, {{1.0, 0.0, 0.0, 0.0}});
  const auto b = make_hist(1, {{0.0, 0.0, 1.0, 0.0}});
  EXPECT_DOUBLE_EQ(histogram_distance(a, b), 1.0);
}

TEST(HistogramDistance, MedianOverBlocks) {
  // 2x2 grid: two identical blocks, two disjoint blocks -> distances
  // {0, 0, 1, 1}, median 0.5
  const auto a = make_hist(2, {{1, 0}, {0, 1}, {1, 0}, {0, 1}});
  const auto b = make_hist(2, {{1, 0}, {0, 1}, {0, 1}, {1, 0}});
  EXPECT_DOUBLE_EQ(histogram_distance(a, b), 0.5);
}

TEST(HistogramDistance, ShapeMismatch) {
  const auto a = make_hist(1, {{1, 0}});
  const auto b = make_hist(1, {{1, 0, 0}});
  try {
    histogram_distance(a, b);
    FAIL() << "expected ShapeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

namespace {

// Corpus of shots whose frame histograms come from per-shot classes: same
// class means nearly identical histograms, different classes are disjoint.
Corpus class_corpus(const std::vector<int>& classes, double noise, SplitMix64& rng) {
  Corpus corpus;
  const int n = static_cast<int>(classes.size());
  const int bins = 8;
  corpus.shot_histograms.resize(n);
  for (int s = 0; s < n; ++s) {
    corpus.shots.push_back({s, s * 1000, (s + 1) * 1000});
    for (int f = 0; f < kFramesPerShot; ++f) {
      BlockHistogram h;
      h.grid = 1;
      h.bins = bins;
      h.values.assign(bins, 0.0);
      h.values[classes[s] % bins] = 1.0;
      for (int k = 0; k < bins; ++k) h.values[k] += noise * rng.next_unit();
      double sum = 0.0;
      for (double v : h.values) sum += v;
      for (double& v : h.values) v /= sum;
      corpus.shot_histograms[s].push_back(std::move(h));
    }
  }
  corpus.scenes.push_back({0, 1, 1, 0, n * 1000});
  corpus.turns.push_back({10, 500, "X", {}, -1});
  corpus.finalize();
  return corpus;
}

}  // namespace

TEST(ShotSimilarity, AdjacentShotsNeverSimilar) {
  SplitMix64 rng(1);
  const Corpus corpus = class_corpus({0, 0, 1}, 0.0, rng);
  const SimilarityMatrix s = shot_similarity(corpus, 0.3);
  EXPECT_FALSE(s.at(0, 1));  // identical but adjacent
  EXPECT_TRUE(s.at(0, 0));
  EXPECT_TRUE(s.at(1, 1));
}

TEST(ShotSimilarity, RecurringShotDetected) {
  SplitMix64 rng(2);
  const Corpus corpus = class_corpus({0, 1, 0}, 0.0, rng);
  const SimilarityMatrix s = shot_similarity(corpus, 0.3);
  EXPECT_TRUE(s.at(0, 2));
  EXPECT_TRUE(s.at(2, 0));
  EXPECT_FALSE(s.at(0, 1));
}

TEST(ShotSimilarity, MissingHistogramsReported) {
  SplitMix64 rng(3);
  Corpus corpus = class_corpus({0, 1, 0}, 0.0, rng);
  corpus.shot_histograms[1].clear();
  try {
    shot_similarity(corpus, 0.3);
    FAIL() << "expected MissingHistograms";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingHistograms);
    EXPECT_EQ(e.id(), 1);
  }
}

TEST(ShotSimilarity, MatchesBruteForceRecomputation) {
  SplitMix64 rng(4);
  std::vector<int> classes;
  for (int i = 0; i < 14; ++i) classes.push_back(static_cast<int>(rng.next_below(5)));
  const Corpus corpus = class_corpus(classes, 0.08, rng);
  const double theta = 0.25;
  const SimilarityMatrix s = shot_similarity(corpus, theta);
  for (int i = 0; i < corpus.n_shots(); ++i)
    for (int j = 0; j < corpus.n_shots(); ++j) {
      bool expected;
      if (i == j) {
        expected = true;
      } else if (std::abs(i - j) < 2) {
        expected = false;
      } else {
        double best = 2.0;
        for (int a = 0; a < kFramesPerShot; ++a)
          for (int b = 0; b < kFramesPerShot; ++b)
            best = std::min(best, histogram_distance(corpus.shot_histograms[i][a],
                                                     corpus.shot_histograms[j][b]));
        expected = best < theta;
      }
      EXPECT_EQ(s.at(i, j), expected) << i << "," << j;
    }
}

TEST(ShotSimilarity, MonotoneInTheta) {
  SplitMix64 rng(5);
  std::vector<int> classes;
  for (int i = 0; i < 12; ++i) classes.push_back(static_cast<int>(rng.next_below(4)));
  const Corpus corpus = class_corpus(classes, 0.3, rng);
  const SimilarityMatrix lo = shot_similarity(corpus, 0.15);
  const SimilarityMatrix hi = shot_similarity(corpus, 0.45);
  for (int i = 0; i < corpus.n_shots(); ++i)
    for (int j = 0; j < corpus.n_shots(); ++j)
      if (lo.at(i, j)) EXPECT_TRUE(hi.at(i, j));
}

TEST(ShotSimilarity, SymmetryAndZeroSubdiagonal) {
  SplitMix64 rng(6);
  const SimilarityMatrix s = oracles::random_similarity(40, 0.1, rng);
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 40; ++j) EXPECT_EQ(s.at(i, j), s.at(j, i));
    if (i > 0) EXPECT_FALSE(s.at(i, i - 1));
    EXPECT_TRUE(s.at(i, i));
  }
}

TEST(SimilarityFromPairs, PassThrough) {
  Corpus corpus;
  for (int i = 0; i < 6; ++i) corpus.shots.push_back({i, i * 1000, (i + 1) * 1000});
  corpus.scenes.push_back({0, 1, 1, 0, 6000});
  corpus.turns.push_back({10, 500, "X", {}, -1});
  corpus.similarity_pairs = std::vector<std::pair<int, int>>{{0, 2}, {1, 5}};
  corpus.finalize();
  const SimilarityMatrix s = corpus_similarity(corpus, 0.25);
  EXPECT_TRUE(s.at(0, 2));
  EXPECT_TRUE(s.at(5, 1));
  EXPECT_FALSE(s.at(0, 3));
}

TEST(SimilarityMatrix, RowCountRanges) {
  SimilarityMatrix s(130);
  s.set_pair(3, 70);
  s.set_pair(3, 128);
  s.set_pair(3, 5);
  EXPECT_EQ(s.row_count(3, 0, 130), 4);  // diagonal included
  EXPECT_EQ(s.row_count(3, 4, 70), 5 >= 4 && 5 < 70 ? 1 : 0);
  EXPECT_EQ(s.row_count(3, 64, 129), 1);
  EXPECT_EQ(s.row_count(3, 64, 130), 2);
  EXPECT_EQ(s.row_count(3, 129, 130), 0);
}
