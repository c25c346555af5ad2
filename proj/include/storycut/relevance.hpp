#pragma once
// Candidate scoring: social relevance (cosine against the episode
// representative), shot size (face-box heights), musicality (chroma
// dispersion), combined by a convex weighting.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "storycut/corpus.hpp"
#include "storycut/error.hpp"
#include "storycut/lsu.hpp"
#include "storycut/network.hpp"

namespace storycut {

// Feature weights (social relevance, shot size, musicality). Non-negative,
// summing to 1.
struct Weights {
  double social = 0.16;
  double shot_size = 0.42;
  double musicality = 0.42;

  void validate() const {
    if (social < 0.0 || shot_size < 0.0 || musicality < 0.0)
      throw std::invalid_argument("feature weights must be non-negative");
    if (std::abs(social + shot_size + musicality - 1.0) > 1e-9)
      throw std::invalid_argument("feature weights must sum to 1");
  }
};

inline constexpr Weights kFullWeights{0.16, 0.42, 0.42};
inline constexpr Weights kStyleWeights{0.0, 0.5, 0.5};

// Median height of the detected face boxes over a shot's sampled frames,
// clamped to [0, 1]. Shots with no detection score 0.
inline double shot_size(const FaceFrames& frames) {
  std::vector<double> detected;
  for (const auto& h : frames)
    if (h) detected.push_back(*h);
  if (detected.empty()) return 0.0;
  return std::clamp(median(std::move(detected)), 0.0, 1.0);
}

// Per-shot sizes for the whole corpus; empty faces file means all zeros.
inline std::vector<double> shot_sizes(const Corpus& corpus) {
  std::vector<double> sizes(corpus.n_shots(), 0.0);
  if (corpus.face_heights.empty()) return sizes;
  for (int s = 0; s < corpus.n_shots(); ++s) sizes[s] = shot_size(corpus.face_heights[s]);
  return sizes;
}

// Mean shot size over the unit's shots.
inline double lsu_shot_size(std::span<const double> sizes, const Lsu& unit) {
  double sum = 0.0;
  for (int s = unit.first_shot; s <= unit.last_shot; ++s) sum += sizes[s];
  return sum / static_cast<double>(unit.last_shot - unit.first_shot + 1);
}

namespace detail {

// L1-normalizes a chroma frame; an all-zero frame maps to the uniform
// distribution.
inline std::array<double, 12> normalized_chroma(const std::array<double, 12>& c) {
  double sum = 0.0;
  for (const double v : c) sum += v;
  std::array<double, 12> out{};
  if (sum <= 0.0) {
    out.fill(1.0 / 12.0);
    return out;
  }
  for (int i = 0; i < 12; ++i) out[i] = c[i] / sum;
  return out;
}

}  // namespace detail

// Raw musicality of the chroma frames within [start_ms, end_ms):
//   D_notes - D_time
// where D_notes is the mean over frames of the population standard deviation
// of the normalized frame's 12 components (note concentration), and D_time is
// the mean L2 difference between consecutive normalized frames (temporal
// instability). Spans with no frame score 0; single frames have D_time = 0.
inline double musicality_raw(const Corpus& corpus, std::int64_t start_ms, std::int64_t end_ms) {
  const auto begin = std::lower_bound(
      corpus.chroma.begin(), corpus.chroma.end(), start_ms,
      [](const ChromaFrame& f, std::int64_t t) { return f.time_ms < t; });
  const auto end = std::lower_bound(
      begin, corpus.chroma.end(), end_ms,
      [](const ChromaFrame& f, std::int64_t t) { return f.time_ms < t; });
  if (begin == end) return 0.0;

  double notes_sum = 0.0;
  double time_sum = 0.0;
  int n_frames = 0;
  std::array<double, 12> prev{};
  for (auto it = begin; it != end; ++it) {
    const std::array<double, 12> cur = detail::normalized_chroma(it->chroma);
    double mean = 0.0;
    for (const double v : cur) mean += v;
    mean /= 12.0;
    double var = 0.0;
    for (const double v : cur) var += (v - mean) * (v - mean);
    notes_sum += std::sqrt(var / 12.0);
    if (n_frames > 0) {
      double diff2 = 0.0;
      for (int i = 0; i < 12; ++i) diff2 += (cur[i] - prev[i]) * (cur[i] - prev[i]);
      time_sum += std::sqrt(diff2);
    }
    prev = cur;
    ++n_frames;
  }
  const double d_notes = notes_sum / n_frames;
  const double d_time = n_frames > 1 ? time_sum / (n_frames - 1) : 0.0;
  return d_notes - d_time;
}

inline double musicality_raw(const Corpus& corpus, const Lsu& unit) {
  return musicality_raw(corpus, unit.start_ms, unit.end_ms);
}

// Min-max normalization over the candidate pool. A degenerate range maps
// everything to 0.5 so the combined total order stays stable.
inline std::vector<double> normalize_musicality(std::span<const double> raws) {
  std::vector<double> out(raws.size(), 0.5);
  if (raws.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(raws.begin(), raws.end());
  const double lo = *lo_it, hi = *hi_it;
  if (hi - lo <= 0.0) return out;
  for (std::size_t i = 0; i < raws.size(); ++i) out[i] = (raws[i] - lo) / (hi - lo);
  return out;
}

// Cosine similarity between the unit's interaction vector and the episode
// representative. Undefined (soliloquy) when the unit vector is zero, or when
// the representative carries no relationships to compare against.
inline std::optional<double> social_relevance(std::span<const double> lsu_vector,
                                              std::span<const double> representative) {
  return cosine_similarity(lsu_vector, representative);
}

// p = w1*sr + w2*ss + w3*m. With a zero social weight the result is
// independent of sr, defined or not.
inline double combined_relevance(std::optional<double> sr, double ss, double m,
                                 const Weights& w) {
  double p = w.shot_size * ss + w.musicality * m;
  if (w.social > 0.0) {
    if (!sr)
      throw Error(ErrorKind::UndefinedSocialRelevance,
                  "social weight is positive but the unit has no interlocutor");
    p += w.social * *sr;
  }
  return p;
}

}  // namespace storycut
