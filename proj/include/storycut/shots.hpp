#pragma once
// Binary shot-similarity matrix: s_ij = 1 when two shots show the same camera
// setup. Computed from per-shot block histograms, or passed through from a
// precomputed pair list.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "storycut/corpus.hpp"
#include "storycut/error.hpp"
#include "storycut/types.hpp"
#include "storycut/util.hpp"

namespace storycut {

// Symmetric binary matrix over shots. Invariants: s_ii = 1, s_ij = s_ji,
// and s_{k,k-1} = 0 (consecutive shots are never similar).
class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(int n)
      : n_(n), words_(static_cast<std::size_t>(n) * words_per_row(n), 0) {
    for (int i = 0; i < n; ++i) set_bit(i, i);
  }

  int size() const { return n_; }

  bool at(int i, int j) const {
    const std::size_t bit = static_cast<std::size_t>(j);
    return (row(i)[bit >> 6] >> (bit & 63)) & 1u;
  }

  // Marks shots i and j as similar (both triangles). Pairs on or next to the
  // diagonal are rejected by the matrix invariant.
  void set_pair(int i, int j) {
    if (i == j) return;
    if (i > j) std::swap(i, j);
    if (j - i < 2) throw std::logic_error("consecutive shots cannot be marked similar");
    set_bit(i, j);
    set_bit(j, i);
  }

  void clear_pair(int i, int j) {
    clear_bit(i, j);
    clear_bit(j, i);
  }

  // Number of 1-entries in row i over columns [lo, hi).
  std::int64_t row_count(int i, int lo, int hi) const {
    if (lo >= hi) return 0;
    const std::uint64_t* r = row(i);
    const int word_lo = lo >> 6, word_hi = (hi - 1) >> 6;
    std::int64_t total = 0;
    for (int w = word_lo; w <= word_hi; ++w) {
      std::uint64_t bits = r[w];
      if (w == word_lo) bits &= ~0ull << (lo & 63);
      if (w == word_hi && ((hi & 63) != 0)) bits &= ~0ull >> (64 - (hi & 63));
      total += std::popcount(bits);
    }
    return total;
  }

  // Strictly-upper-triangle pairs (i, j) with j - i >= 2 inside [first, last].
  std::vector<std::pair<int, int>> pairs_in_range(int first, int last) const {
    std::vector<std::pair<int, int>> out;
    for (int i = first; i + 2 <= last; ++i)
      for (int j = i + 2; j <= last; ++j)
        if (at(i, j)) out.emplace_back(i, j);
    return out;
  }

 private:
  static std::size_t words_per_row(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }
  const std::uint64_t* row(int i) const { return words_.data() + i * words_per_row(n_); }
  std::uint64_t* row(int i) { return words_.data() + i * words_per_row(n_); }
  void set_bit(int i, int j) { row(i)[j >> 6] |= 1ull << (j & 63); }
  void clear_bit(int i, int j) { row(i)[j >> 6] &= ~(1ull << (j & 63)); }

  int n_;
  std::vector<std::uint64_t> words_;
};

namespace detail {

// Per-block L1 distance halved (each block is L1-normalized, so this lands in
// [0,1]), then the median over blocks.
inline double histogram_distance_scratch(const BlockHistogram& a, const BlockHistogram& b,
                                         std::vector<double>& scratch) {
  scratch.clear();
  for (int blk = 0; blk < a.block_count(); ++blk) {
    const auto pa = a.block(blk);
    const auto pb = b.block(blk);
    double l1 = 0.0;
    for (int k = 0; k < a.bins; ++k) l1 += std::abs(pa[k] - pb[k]);
    scratch.push_back(0.5 * l1);
  }
  return median(scratch);
}

}  // namespace detail

// Block-based frame comparison: median over blocks of the halved per-block L1
// distance. Symmetric, 0 for identical inputs, 1 for disjoint supports.
inline double histogram_distance(const BlockHistogram& a, const BlockHistogram& b) {
  if (!a.same_shape(b))
    throw Error(ErrorKind::ShapeMismatch, "block histograms have different grid or bin counts");
  std::vector<double> scratch;
  return detail::histogram_distance_scratch(a, b, scratch);
}

// Similarity from histograms: s_ij = 1 iff |i - j| >= 2 and the minimum
// distance over the 5x5 frame-sample pairs falls strictly below theta.
inline SimilarityMatrix shot_similarity(const Corpus& corpus, double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("similarity threshold must lie in (0, 1)");
  const int n = corpus.n_shots();
  for (int s = 0; s < n; ++s) {
    if (corpus.shot_histograms.empty() || corpus.shot_histograms[s].empty())
      throw Error(ErrorKind::MissingHistograms,
                  "shot " + std::to_string(s) + " has no frame histograms", "shot", s);
    for (const BlockHistogram& h : corpus.shot_histograms[s])
      if (!h.same_shape(corpus.shot_histograms[0][0]))
        throw Error(ErrorKind::ShapeMismatch,
                    "block histograms have different grid or bin counts");
  }
  SimilarityMatrix matrix(n);
  std::vector<std::vector<std::pair<int, int>>> found(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    std::vector<double> scratch;
    const auto& fi = corpus.shot_histograms[i];
    for (int j = i + 2; j < n; ++j) {
      const auto& fj = corpus.shot_histograms[j];
      bool similar = false;
      for (int a = 0; a < kFramesPerShot && !similar; ++a)
        for (int b = 0; b < kFramesPerShot; ++b)
          if (detail::histogram_distance_scratch(fi[a], fj[b], scratch) < theta) {
            similar = true;
            break;
          }
      if (similar) found[i].emplace_back(i, j);
    }
  });
  for (const auto& row_pairs : found)
    for (const auto& [i, j] : row_pairs) matrix.set_pair(i, j);
  return matrix;
}

inline SimilarityMatrix similarity_from_pairs(int n, std::span<const std::pair<int, int>> pairs) {
  SimilarityMatrix matrix(n);
  for (const auto& [i, j] : pairs) matrix.set_pair(i, j);
  return matrix;
}

// Supplied pair list when present, histogram comparison otherwise.
inline SimilarityMatrix corpus_similarity(const Corpus& corpus, double theta) {
  if (corpus.similarity_pairs)
    return similarity_from_pairs(corpus.n_shots(), *corpus.similarity_pairs);
  return shot_similarity(corpus, theta);
}

}  // namespace storycut
