#pragma once
// Budgeted diversity-aware selection: a greedy ratio heuristic for the
// quadratic knapsack with pairwise non-overlap, plus an exhaustive oracle for
// small instances.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "storycut/error.hpp"

namespace storycut {

// One selection instance: relevance p_i >= 0, duration w_i > 0, pairwise
// dissimilarity d_ij (symmetric, zero diagonal), and inclusive shot ranges
// that define the non-overlap constraint.
struct SelectionProblem {
  std::vector<double> relevance;
  std::vector<double> duration;
  std::vector<double> dissimilarity;  // n*n, row-major
  std::vector<std::pair<int, int>> range;

  int size() const { return static_cast<int>(relevance.size()); }
  double d(int i, int j) const {
    return dissimilarity[static_cast<std::size_t>(i) * relevance.size() + j];
  }
  bool overlaps(int i, int j) const {
    return range[i].first <= range[j].second && range[j].first <= range[i].second;
  }
};

struct GreedyResult {
  std::vector<int> selected;           // in acceptance order
  std::vector<double> gain;            // relevance of each item at acceptance time
  double objective = 0.0;              // sum of gains
  std::int64_t pair_inspections = 0;   // argmax scans + relevance updates
};

// Ratio-greedy selection: repeatedly pop the remaining item with the best
// relevance/duration ratio (ties to the lowest index), accept it when it fits
// the remaining budget and overlaps no accepted item, and on acceptance add
// 2*d_is to every item's relevance. The loop runs while items remain and
// budget is strictly positive, so an accepted item that exhausts the budget
// ends the pass even if zero-cost work were left.
inline GreedyResult greedy_select(const SelectionProblem& problem, double budget) {
  const int n = problem.size();
  GreedyResult result;
  std::vector<double> p = problem.relevance;
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  double remaining = budget;

  while (!pool.empty() && remaining > 0.0) {
    int best_pos = 0;
    double best_ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t pos = 0; pos < pool.size(); ++pos) {
      const int i = pool[pos];
      const double ratio = p[i] / problem.duration[i];
      ++result.pair_inspections;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best_pos = static_cast<int>(pos);
      }
    }
    const int s = pool[best_pos];

    bool feasible = problem.duration[s] <= remaining;
    for (std::size_t k = 0; feasible && k < result.selected.size(); ++k) {
      ++result.pair_inspections;
      if (problem.overlaps(s, result.selected[k])) feasible = false;
    }
    if (feasible) {
      result.selected.push_back(s);
      result.gain.push_back(p[s]);
      result.objective += p[s];
      remaining -= problem.duration[s];
      for (int i = 0; i < n; ++i) {
        p[i] += 2.0 * problem.d(i, s);
        ++result.pair_inspections;
      }
    }
    pool.erase(pool.begin() + best_pos);
  }
  return result;
}

// Direct evaluation of the quadratic objective over a selection: the sum of
// base relevances plus the full double sum of pairwise dissimilarities
// (ordered pairs, diagonal included).
inline double objective_value(const SelectionProblem& problem, std::span<const int> selected) {
  double value = 0.0;
  for (const int i : selected) value += problem.relevance[i];
  for (const int i : selected)
    for (const int j : selected) value += problem.d(i, j);
  return value;
}

struct ExactResult {
  std::vector<int> selected;  // ascending
  double objective = 0.0;
};

inline constexpr int kExactSelectLimit = 20;

// Exhaustive search over feasible subsets (budget and non-overlap),
// maximizing the quadratic objective. Guarded to small instances.
inline ExactResult exact_select(const SelectionProblem& problem, double budget) {
  const int n = problem.size();
  if (n > kExactSelectLimit)
    throw Error(ErrorKind::TooLarge,
                "exact selection supports at most " + std::to_string(kExactSelectLimit) +
                    " candidates, got " + std::to_string(n));
  ExactResult best;
  std::vector<int> chosen;

  // DFS over items; value carries the incremental objective of `chosen`.
  const auto rec = [&](auto&& self, int next, double used, double value) -> void {
    if (value > best.objective) {
      best.objective = value;
      best.selected = chosen;
    }
    for (int i = next; i < n; ++i) {
      if (used + problem.duration[i] > budget) continue;
      bool clash = false;
      for (const int j : chosen)
        if (problem.overlaps(i, j)) {
          clash = true;
          break;
        }
      if (clash) continue;
      double gain = problem.relevance[i] + problem.d(i, i);
      for (const int j : chosen) gain += problem.d(i, j) + problem.d(j, i);
      chosen.push_back(i);
      self(self, i + 1, used + problem.duration[i], value + gain);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0.0, 0.0);
  std::sort(best.selected.begin(), best.selected.end());
  return best;
}

}  // namespace storycut
