#pragma once
// Storyline segmentation: cover the scene axis with admissible contiguous
// intervals (1-center radius within the granularity threshold) minimizing the
// total interval length, then refine the cover into a true partition with a
// representative scene per episode.

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "storycut/error.hpp"
#include "storycut/network.hpp"

namespace storycut {

// Contiguous storyline-index interval, inclusive.
struct EpisodeInterval {
  int a = 0;
  int b = 0;

  int length() const { return b - a + 1; }
};

struct NarrativeEpisode {
  int a = 0;
  int b = 0;
  int representative = 0;  // storyline index of the 1-center scene

  bool contains(int t) const { return a <= t && t <= b; }
};

// 1-center of [a, b]: the scene minimizing the maximum distance to every
// other scene in the interval. Ties break to the earliest scene.
inline int interval_center(const DistanceMatrix& d, int a, int b, double* radius_out = nullptr) {
  int best = a;
  double best_radius = std::numeric_limits<double>::infinity();
  for (int t = a; t <= b; ++t) {
    double worst = 0.0;
    for (int u = a; u <= b; ++u) worst = std::max(worst, d.at(t, u));
    if (worst < best_radius) {
      best_radius = worst;
      best = t;
    }
  }
  if (radius_out) *radius_out = best_radius;
  return best;
}

// The 1-center when its radius stays within tau, nothing otherwise.
inline std::optional<int> admissible_center(const DistanceMatrix& d, int a, int b, double tau) {
  double radius = 0.0;
  const int center = interval_center(d, a, b, &radius);
  if (radius > tau) return std::nullopt;
  return center;
}

namespace detail {

// 1-center radii and centers for every interval, O(n^3). radii[a*n+b] and
// centers[a*n+b] are valid for a <= b.
struct IntervalCenters {
  int n = 0;
  std::vector<double> radii;
  std::vector<int> centers;

  double radius(int a, int b) const { return radii[static_cast<std::size_t>(a) * n + b]; }
  int center(int a, int b) const { return centers[static_cast<std::size_t>(a) * n + b]; }
};

inline IntervalCenters all_interval_centers(const DistanceMatrix& d) {
  const int n = d.n;
  IntervalCenters out;
  out.n = n;
  out.radii.assign(static_cast<std::size_t>(n) * n, 0.0);
  out.centers.assign(static_cast<std::size_t>(n) * n, 0);
  std::vector<double> row_max(n);
  for (int a = 0; a < n; ++a) {
    row_max[a] = 0.0;
    out.radii[static_cast<std::size_t>(a) * n + a] = 0.0;
    out.centers[static_cast<std::size_t>(a) * n + a] = a;
    for (int b = a + 1; b < n; ++b) {
      // extend every running max with column b, then add row b
      double incoming = 0.0;
      for (int t = a; t < b; ++t) {
        row_max[t] = std::max(row_max[t], d.at(t, b));
        incoming = std::max(incoming, d.at(b, t));
      }
      row_max[b] = incoming;
      int center = a;
      double radius = row_max[a];
      for (int t = a + 1; t <= b; ++t)
        if (row_max[t] < radius) {
          radius = row_max[t];
          center = t;
        }
      out.radii[static_cast<std::size_t>(a) * n + b] = radius;
      out.centers[static_cast<std::size_t>(a) * n + b] = center;
    }
  }
  return out;
}

}  // namespace detail

// Cover cost, compared lexicographically: fewest intervals first (the set
// covering objective), then least total length (which, with the union fixed,
// is least overlap). Total length alone cannot discriminate: every admissible
// partition, down to all singletons, has total length exactly n.
struct CoverCost {
  long long count = 0;
  long long length = 0;

  friend bool operator<(const CoverCost& x, const CoverCost& y) {
    return std::tie(x.count, x.length) < std::tie(y.count, y.length);
  }
  friend bool operator==(const CoverCost& x, const CoverCost& y) {
    return x.count == y.count && x.length == y.length;
  }
};

// Optimal cover of [0, n-1] by admissible intervals, solved by a shortest-
// path DP over covered-prefix states: f(p) is the cheapest way to cover
// scenes 0..p-1, and an admissible [a, b] extends any p in [a, b] to b + 1 at
// cost (1, b - a + 1). Singletons are always admissible, so a cover exists.
// Returned chronologically.
inline std::vector<EpisodeInterval> min_overlap_cover(const DistanceMatrix& d, double tau,
                                                      CoverCost* cost_out = nullptr) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const int n = d.n;
  if (n == 0) return {};
  const detail::IntervalCenters centers = detail::all_interval_centers(d);

  constexpr long long kInf = std::numeric_limits<long long>::max() / 2;
  std::vector<CoverCost> f(static_cast<std::size_t>(n) + 1, CoverCost{kInf, kInf});
  std::vector<int> from_a(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> from_p(static_cast<std::size_t>(n) + 1, -1);
  f[0] = {0, 0};
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a <= b; ++a) {
      if (centers.radius(a, b) > tau) continue;
      const long long len = b - a + 1;
      for (int p = a; p <= b; ++p) {
        if (f[p].count == kInf) continue;
        const CoverCost cand{f[p].count + 1, f[p].length + len};
        if (cand < f[b + 1]) {
          f[b + 1] = cand;
          from_a[b + 1] = a;
          from_p[b + 1] = p;
        }
      }
    }
  }

  if (cost_out) *cost_out = f[n];
  std::vector<EpisodeInterval> cover;
  for (int state = n; state > 0; state = from_p[state])
    cover.push_back({from_a[state], state - 1});
  std::sort(cover.begin(), cover.end(),
            [](const EpisodeInterval& x, const EpisodeInterval& y) { return x.a < y.a; });
  return cover;
}

// Refines an overlapping cover into a partition. Scenes shared by two
// consecutive intervals go to the interval whose original representative is
// nearer; ties go to the earlier interval. Scanning the overlap left to right
// and splitting at the first scene preferring the right representative keeps
// every episode contiguous. Representatives are recomputed on the final
// ranges.
inline std::vector<NarrativeEpisode> refine_to_partition(std::vector<EpisodeInterval> cover,
                                                         const DistanceMatrix& d) {
  if (cover.empty()) return {};
  std::vector<int> reps(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i)
    reps[i] = interval_center(d, cover[i].a, cover[i].b);

  for (std::size_t i = 0; i + 1 < cover.size(); ++i) {
    if (cover[i + 1].a > cover[i].b) continue;
    int split = cover[i + 1].a;
    while (split <= cover[i].b && d.at(split, reps[i]) <= d.at(split, reps[i + 1])) ++split;
    cover[i].b = split - 1;
    cover[i + 1].a = split;
  }

  std::vector<NarrativeEpisode> episodes;
  episodes.reserve(cover.size());
  for (const EpisodeInterval& iv : cover)
    episodes.push_back({iv.a, iv.b, interval_center(d, iv.a, iv.b)});
  return episodes;
}

// The unique episode whose range contains the storyline index.
inline int locate_episode(const std::vector<NarrativeEpisode>& episodes, int storyline_index) {
  for (std::size_t i = 0; i < episodes.size(); ++i)
    if (episodes[i].contains(storyline_index)) return static_cast<int>(i);
  throw Error(ErrorKind::SceneOutsideStoryline,
              "storyline index " + std::to_string(storyline_index) + " is not covered");
}

// Convenience: segment a character's storyline end to end.
inline std::vector<NarrativeEpisode> segment_storyline(const DistanceMatrix& d, double tau) {
  return refine_to_partition(min_overlap_cover(d, tau), d);
}

}  // namespace storycut
