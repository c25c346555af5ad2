#pragma once
// Brute-force reference implementations for verification. Everything here is
// written from the definitions, independent of the production algorithms it
// checks, and is only feasible at small sizes.

#include <algorithm>
#include <limits>
#include <vector>

#include "storycut/lsu.hpp"
#include "storycut/network.hpp"
#include "storycut/segmentation.hpp"
#include "storycut/selection.hpp"
#include "storycut/shots.hpp"
#include "storycut/util.hpp"

namespace storycut::oracles {

// Interior scores straight from the definition: S(k) = sum of s_ij over
// i > k, j < k.
inline std::vector<std::int64_t> interior_scores_direct(const SimilarityMatrix& s) {
  const int n = s.size();
  std::vector<std::int64_t> scores(n, 0);
  for (int k = 0; k < n; ++k) {
    std::int64_t sum = 0;
    for (int i = k + 1; i < n; ++i)
      for (int j = 0; j < k; ++j)
        if (s.at(i, j)) ++sum;
    scores[k] = sum;
  }
  if (n > 0) {
    scores[0] = 0;
    scores[n - 1] = 0;
  }
  return scores;
}

// Maximal LSUs from the definition: a shot is interior iff some similar pair
// straddles it; every maximal run of interior shots, extended one shot left
// and right, is a unit.
inline std::vector<ShotRange> detect_lsus_direct(const SimilarityMatrix& s) {
  const int n = s.size();
  std::vector<bool> interior(n, false);
  for (int k = 1; k + 1 < n; ++k) {
    for (int i = k + 1; i < n && !interior[k]; ++i)
      for (int j = 0; j < k; ++j)
        if (s.at(i, j)) {
          interior[k] = true;
          break;
        }
  }
  std::vector<ShotRange> out;
  int run_start = -1;
  for (int k = 0; k < n; ++k) {
    if (interior[k] && run_start < 0) run_start = k;
    if (!interior[k] && run_start >= 0) {
      out.push_back({run_start - 1, k});
      run_start = -1;
    }
  }
  return out;
}

// Admissibility of [a, b] from the definition: some scene's worst in-interval
// distance stays within tau.
inline bool interval_admissible_direct(const DistanceMatrix& d, int a, int b, double tau) {
  for (int t = a; t <= b; ++t) {
    double worst = 0.0;
    for (int u = a; u <= b; ++u) worst = std::max(worst, d.at(t, u));
    if (worst <= tau) return true;
  }
  return false;
}

namespace detail {

inline void cover_rec(const std::vector<std::vector<int>>& widest_a, int n, int first_uncovered,
                      CoverCost so_far, CoverCost& best) {
  if (!(so_far < best)) return;
  if (first_uncovered >= n) {
    best = so_far;
    return;
  }
  const int p = first_uncovered;
  for (int b = p; b < n; ++b) {
    // Among admissible intervals [a, b] with a <= p, only the shortest
    // matters: scenes before p are already covered, so a smaller a adds
    // length without adding coverage.
    const int a = widest_a[b][p];
    if (a < 0) continue;
    cover_rec(widest_a, n, b + 1, CoverCost{so_far.count + 1, so_far.length + (b - a + 1)},
              best);
  }
}

}  // namespace detail

// Optimal (fewest intervals, then least total length) cover of [0, n-1] by
// admissible intervals, by exhaustive recursion over the interval covering
// the first uncovered scene (with the shortest-interval reduction above).
// Feasible for n <= ~20.
inline CoverCost min_cover_cost_direct(const DistanceMatrix& d, double tau) {
  const int n = d.n;
  if (n == 0) return {0, 0};
  // widest_a[b][p]: largest a <= p with [a, b] admissible, or -1
  std::vector<std::vector<int>> widest_a(n, std::vector<int>(n, -1));
  for (int b = 0; b < n; ++b) {
    int best = -1;
    for (int p = 0; p <= b; ++p) {
      if (interval_admissible_direct(d, p, b, tau)) best = std::max(best, p);
      widest_a[b][p] = best;
    }
    for (int p = b + 1; p < n; ++p) widest_a[b][p] = best;
  }
  constexpr long long kInf = std::numeric_limits<long long>::max() / 2;
  CoverCost best{kInf, kInf};
  detail::cover_rec(widest_a, n, 0, CoverCost{0, 0}, best);
  return best;
}

// --- deterministic random instances -----------------------------------------

// Random symmetric binary matrix with unit diagonal and zero first
// off-diagonal.
inline SimilarityMatrix random_similarity(int n, double density, SplitMix64& rng) {
  SimilarityMatrix s(n);
  for (int i = 0; i + 2 < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (rng.next_unit() < density) s.set_pair(i, j);
  return s;
}

// Random symmetric distance matrix with zero diagonal, entries in
// [0, sqrt(2)].
inline DistanceMatrix random_distances(int n, SplitMix64& rng) {
  DistanceMatrix d;
  d.n = n;
  d.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int t = 0; t < n; ++t)
    for (int u = t + 1; u < n; ++u) {
      const double v = rng.next_range(0.0, kSqrt2);
      d.at(t, u) = v;
      d.at(u, t) = v;
    }
  return d;
}

// Random selection instance: non-negative relevances, positive durations,
// symmetric dissimilarities, and shot ranges that overlap now and then.
inline SelectionProblem random_selection_problem(int n, SplitMix64& rng) {
  SelectionProblem problem;
  problem.relevance.resize(n);
  problem.duration.resize(n);
  problem.range.resize(n);
  problem.dissimilarity.assign(static_cast<std::size_t>(n) * n, 0.0);
  int cursor = 0;
  for (int i = 0; i < n; ++i) {
    problem.relevance[i] = rng.next_range(0.0, 1.0);
    problem.duration[i] = rng.next_range(1.0, 10.0);
    const int width = 1 + static_cast<int>(rng.next_below(4));
    problem.range[i] = {cursor, cursor + width};
    // advance less than the width sometimes, so neighbors overlap
    cursor += 1 + static_cast<int>(rng.next_below(static_cast<std::size_t>(width) + 2));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.next_range(0.0, kSqrt2);
      problem.dissimilarity[static_cast<std::size_t>(i) * n + j] = v;
      problem.dissimilarity[static_cast<std::size_t>(j) * n + i] = v;
    }
  return problem;
}

}  // namespace storycut::oracles
