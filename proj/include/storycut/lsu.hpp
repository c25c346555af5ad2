#pragma once
// Logical story unit detection. A shot strictly inside an LSU is surrounded
// by two occurrences of the same recurring shot; boundaries follow from the
// interior score S(k) = sum of s_ij over i > k, j < k.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "storycut/shots.hpp"
#include "storycut/types.hpp"

namespace storycut {

// Inclusive range of shot ordinals.
struct ShotRange {
  int first = 0;
  int last = 0;
};

struct Lsu {
  int first_shot = 0;
  int last_shot = 0;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  int depth = 0;  // refinement recursion depth; 0 for maximal units

  double duration_s() const { return static_cast<double>(end_ms - start_ms) / 1000.0; }
};

inline bool lsus_overlap(const Lsu& a, const Lsu& b) {
  return a.first_shot <= b.last_shot && b.first_shot <= a.last_shot;
}

// Interior score per shot, computed by the running update
//   S(k) = S(k-1) - sum_{j<k-1} s_{k,j} + sum_{i>k} s_{i,k-1}
// with S(0) = S(n-1) = 0. The term s_{k,k-1} never enters either sum; it is
// zero by construction. Row popcounts use the matrix symmetry for the column
// sum.
inline std::vector<std::int64_t> interior_scores(const SimilarityMatrix& s) {
  const int n = s.size();
  std::vector<std::int64_t> scores(n, 0);
  for (int k = 1; k < n; ++k)
    scores[k] = scores[k - 1] - s.row_count(k, 0, k - 1) + s.row_count(k - 1, k + 1, n);
  if (n > 0) scores[n - 1] = 0;
  return scores;
}

// Boundary rules over the interior scores: a 0 -> >=1 transition at k opens a
// unit at shot k-1, a >=1 -> 0 transition closes it at shot k. Consecutive
// units may share their single boundary shot.
inline std::vector<ShotRange> detect_maximal_lsus(const SimilarityMatrix& s) {
  const std::vector<std::int64_t> scores = interior_scores(s);
  const int n = s.size();
  std::vector<ShotRange> units;
  int open_at = -1;
  for (int k = 1; k < n; ++k) {
    if (scores[k - 1] == 0 && scores[k] >= 1 && open_at < 0) open_at = k - 1;
    if (scores[k - 1] >= 1 && scores[k] == 0 && open_at >= 0) {
      units.push_back({open_at, k});
      open_at = -1;
    }
  }
  return units;
}

namespace detail {

// Maximal runs of interior shots (those straddled by some pair j < k < i),
// each extended one shot left and right. Equivalent to the boundary rules,
// restricted to [range.first, range.last].
inline std::vector<ShotRange> ranges_from_pairs(const std::vector<std::pair<int, int>>& pairs,
                                                ShotRange range) {
  const int len = range.last - range.first + 1;
  if (len <= 2 || pairs.empty()) return {};
  // diff[k] accumulates coverage of open intervals (j, i) over relative k
  std::vector<int> diff(static_cast<std::size_t>(len) + 1, 0);
  for (const auto& [j, i] : pairs) {
    diff[j - range.first + 1] += 1;
    diff[i - range.first] -= 1;
  }
  std::vector<ShotRange> out;
  int cover = 0, run_start = -1;
  for (int k = 0; k < len; ++k) {
    cover += diff[k];
    const bool interior = cover > 0;
    if (interior && run_start < 0) run_start = k;
    if (!interior && run_start >= 0) {
      out.push_back({range.first + run_start - 1, range.first + k});
      run_start = -1;
    }
  }
  if (run_start >= 0) out.push_back({range.first + run_start - 1, range.last});
  return out;
}

inline Lsu make_lsu(const std::vector<Shot>& shots, ShotRange range, int depth) {
  return Lsu{range.first, range.last, shots[range.first].start_ms, shots[range.last].end_ms,
             depth};
}

struct RefineState {
  const std::vector<Shot>* shots;
  double min_s;
  double max_s;
  std::vector<Lsu> out;
};

// Units within bounds are emitted and not recursed. Units above the upper
// bound are peeled: every similarity pair of maximal span i - j inside the
// unit is deleted (ties all deleted), detection reruns on what remains, and
// the recursion continues. Each step removes at least one pair, so it
// terminates.
inline void refine_rec(RefineState& st, ShotRange range, int depth,
                       std::vector<std::pair<int, int>> pairs) {
  const Lsu unit = make_lsu(*st.shots, range, depth);
  const double dur = unit.duration_s();
  if (dur < st.min_s) return;
  if (dur <= st.max_s) {
    st.out.push_back(unit);
    return;
  }
  if (pairs.empty()) return;
  int max_span = 0;
  for (const auto& [j, i] : pairs) max_span = std::max(max_span, i - j);
  std::vector<std::pair<int, int>> kept;
  kept.reserve(pairs.size());
  for (const auto& [j, i] : pairs)
    if (i - j < max_span) kept.emplace_back(j, i);
  for (const ShotRange& sub : ranges_from_pairs(kept, range)) {
    std::vector<std::pair<int, int>> sub_pairs;
    for (const auto& [j, i] : kept)
      if (j >= sub.first && i <= sub.last) sub_pairs.emplace_back(j, i);
    refine_rec(st, sub, depth + 1, std::move(sub_pairs));
  }
}

}  // namespace detail

// All candidate units discovered at any recursion depth of one maximal LSU
// whose duration lies within [min_s, max_s] seconds. Candidates from
// different recursion branches may overlap.
inline std::vector<Lsu> refine_lsus(const SimilarityMatrix& s, const std::vector<Shot>& shots,
                                    ShotRange maximal, double min_s = 5.0, double max_s = 15.0) {
  detail::RefineState st{&shots, min_s, max_s, {}};
  detail::refine_rec(st, maximal, 0, s.pairs_in_range(maximal.first, maximal.last));
  return st.out;
}

// Full candidate pipeline: maximal units, then refinement, chronological.
inline std::vector<Lsu> candidate_lsus(const SimilarityMatrix& s, const std::vector<Shot>& shots,
                                       double min_s = 5.0, double max_s = 15.0) {
  std::vector<Lsu> out;
  for (const ShotRange& maximal : detect_maximal_lsus(s)) {
    std::vector<Lsu> refined = refine_lsus(s, shots, maximal, min_s, max_s);
    out.insert(out.end(), refined.begin(), refined.end());
  }
  std::sort(out.begin(), out.end(), [](const Lsu& a, const Lsu& b) {
    return std::tie(a.start_ms, a.end_ms, a.depth) < std::tie(b.start_ms, b.end_ms, b.depth);
  });
  return out;
}

}  // namespace storycut
