#pragma once
// Summary assembly: candidate pools per summary kind, per-episode or global
// greedy selection, the seeded random baseline, and summary statistics.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "storycut/corpus.hpp"
#include "storycut/lsu.hpp"
#include "storycut/network.hpp"
#include "storycut/relevance.hpp"
#include "storycut/segmentation.hpp"
#include "storycut/selection.hpp"
#include "storycut/shots.hpp"
#include "storycut/util.hpp"

namespace storycut {

struct Params {
  double theta = 0.25;      // shot-similarity threshold
  double tau = 1.0;         // episode granularity
  double budget_s = 25.0;   // per-episode budget for full summaries
  double min_lsu_s = 5.0;
  double max_lsu_s = 15.0;
  SmoothingParams smoothing;
  Weights weights = kFullWeights;  // full-summary feature weights
  std::uint64_t seed = 1;          // baseline sampling seed
};

// Smoothed network, distance matrix, and episode partition of one character.
struct CharacterAnalysis {
  CharacterNetwork net;
  DistanceMatrix dist;
  std::vector<NarrativeEpisode> episodes;
};

inline CharacterAnalysis analyze_character(const Corpus& corpus, std::string_view character,
                                           const Params& params) {
  CharacterAnalysis analysis;
  analysis.net = smooth_relationships(corpus, character, params.smoothing);
  analysis.dist = distance_matrix(analysis.net);
  analysis.episodes = segment_storyline(analysis.dist, params.tau);
  return analysis;
}

struct Candidate {
  Lsu lsu;
  std::vector<double> interactions;  // within-span seconds with each character
  std::optional<int> episode;        // full mode only
  std::optional<double> sr;
  double ss = 0.0;
  double m_raw = 0.0;
  double m = 0.0;
  double p = 0.0;

  double duration_s() const { return lsu.duration_s(); }
};

struct SummaryStats {
  int n_candidates = 0;
  double mean_candidate_dur_s = 0.0;
  int n_selected = 0;
  double mean_selected_dur_s = 0.0;
  double duration_s = 0.0;
  double compression_rate = 0.0;
  double generation_time_s = 0.0;
};

struct SummarySegment {
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  int first_shot = 0;
  int last_shot = 0;
  std::optional<int> episode;
};

struct Summary {
  std::string kind;  // "full" | "sty" | "bsl"
  std::string character;
  std::optional<std::uint64_t> seed;  // baseline only
  Weights lambda;
  double tau = 0.0;
  double budget_s = 0.0;  // per episode for full, global target otherwise
  std::vector<SummarySegment> segments;
  SummaryStats stats;
};

// Similarity matrix (supplied pairs or histogram comparison) followed by LSU
// detection and refinement.
inline std::vector<Lsu> make_candidates(const Corpus& corpus, const Params& params) {
  const SimilarityMatrix matrix = corpus_similarity(corpus, params.theta);
  return candidate_lsus(matrix, corpus.shots, params.min_lsu_s, params.max_lsu_s);
}

namespace detail {

// Interaction seconds of every character pair among the turns whose midpoint
// lies inside [start_ms, end_ms), reduced to the owner's row.
inline std::vector<double> span_interactions(const Corpus& corpus, int owner,
                                             std::int64_t start_ms, std::int64_t end_ms) {
  std::vector<int> in_span;
  for (int t = 0; t < corpus.n_turns(); ++t) {
    const SpeakerTurn& turn = corpus.turns[t];
    if (turn.start_ms >= end_ms) break;
    const double mid = turn.midpoint_ms();
    if (mid >= static_cast<double>(start_ms) && mid < static_cast<double>(end_ms))
      in_span.push_back(t);
  }
  std::vector<double> vec(corpus.characters.size(), 0.0);
  for (const PairSeconds& rec : interaction_times(corpus, in_span)) {
    if (rec.a == owner) vec[rec.b] += rec.seconds;
    if (rec.b == owner) vec[rec.a] += rec.seconds;
  }
  return vec;
}

inline bool is_zero(std::span<const double> v) {
  for (const double x : v)
    if (x != 0.0) return false;
  return true;
}

// Pool shared by every summary kind: units where the character is verbally
// active, with within-span interaction vectors and stylistic features. Social
// relevance and episode mapping are attached when an analysis is given; with
// a positive social weight, units without a defined social relevance (or
// outside the storyline) are dropped.
inline std::vector<Candidate> build_pool(const Corpus& corpus, const std::vector<Lsu>& lsus,
                                         const std::string& character,
                                         const CharacterAnalysis* analysis,
                                         const Weights& weights,
                                         std::span<const double> sizes) {
  const int owner = corpus.require_character(character);
  std::vector<Candidate> pool;
  for (const Lsu& unit : lsus) {
    if (!verbally_active(corpus, character, unit.start_ms, unit.end_ms)) continue;
    Candidate cand;
    cand.lsu = unit;
    cand.interactions = span_interactions(corpus, owner, unit.start_ms, unit.end_ms);

    if (analysis) {
      const double mid = 0.5 * static_cast<double>(unit.start_ms + unit.end_ms);
      const auto scene = corpus.scene_containing(mid);
      std::optional<int> storyline_pos;
      if (scene) storyline_pos = analysis->net.storyline_index(*scene);
      if (!storyline_pos) continue;  // midpoint scene outside the storyline
      cand.episode = locate_episode(analysis->episodes, *storyline_pos);
      const NarrativeEpisode& ep = analysis->episodes[*cand.episode];
      cand.sr =
          social_relevance(cand.interactions, analysis->net.vectors[ep.representative].weights);
      if (weights.social > 0.0 && !cand.sr) continue;  // soliloquy or bare representative
    }

    cand.ss = lsu_shot_size(sizes, unit);
    cand.m_raw = musicality_raw(corpus, unit);
    pool.push_back(std::move(cand));
  }

  std::vector<double> raws(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) raws[i] = pool[i].m_raw;
  const std::vector<double> normalized = normalize_musicality(raws);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    pool[i].m = normalized[i];
    pool[i].p = combined_relevance(pool[i].sr, pool[i].ss, pool[i].m, weights);
  }
  return pool;
}

inline SelectionProblem make_problem(const std::vector<Candidate>& pool,
                                     std::span<const int> members) {
  SelectionProblem problem;
  const int n = static_cast<int>(members.size());
  problem.relevance.reserve(n);
  problem.duration.reserve(n);
  problem.range.reserve(n);
  for (const int i : members) {
    problem.relevance.push_back(pool[i].p);
    problem.duration.push_back(pool[i].duration_s());
    problem.range.emplace_back(pool[i].lsu.first_shot, pool[i].lsu.last_shot);
  }
  problem.dissimilarity.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dist = vector_distance(std::span<const double>(pool[members[i]].interactions),
                                          std::span<const double>(pool[members[j]].interactions));
      problem.dissimilarity[static_cast<std::size_t>(i) * n + j] = dist;
      problem.dissimilarity[static_cast<std::size_t>(j) * n + i] = dist;
    }
  return problem;
}

// Total duration of the scenes where the character is verbally active.
inline double active_scene_seconds(const Corpus& corpus, const std::string& character) {
  double total = 0.0;
  for (const Scene& scene : corpus.scenes)
    if (verbally_active(corpus, character, scene.start_ms, scene.end_ms))
      total += scene.duration_s();
  return total;
}

inline Summary finish_summary(const Corpus& corpus, const std::string& character,
                              const std::vector<Candidate>& pool, std::vector<int> chosen,
                              Summary summary,
                              std::chrono::steady_clock::time_point started) {
  std::sort(chosen.begin(), chosen.end(), [&](int x, int y) {
    return std::tie(pool[x].lsu.start_ms, pool[x].lsu.end_ms) <
           std::tie(pool[y].lsu.start_ms, pool[y].lsu.end_ms);
  });
  double selected_dur = 0.0;
  for (const int i : chosen) {
    const Candidate& cand = pool[i];
    summary.segments.push_back({cand.lsu.start_ms, cand.lsu.end_ms, cand.lsu.first_shot,
                                cand.lsu.last_shot, cand.episode});
    selected_dur += cand.duration_s();
  }

  SummaryStats& stats = summary.stats;
  stats.n_candidates = static_cast<int>(pool.size());
  double cand_dur = 0.0;
  for (const Candidate& cand : pool) cand_dur += cand.duration_s();
  stats.mean_candidate_dur_s = pool.empty() ? 0.0 : cand_dur / static_cast<double>(pool.size());
  stats.n_selected = static_cast<int>(chosen.size());
  stats.mean_selected_dur_s =
      chosen.empty() ? 0.0 : selected_dur / static_cast<double>(chosen.size());
  stats.duration_s = selected_dur;
  const double active = active_scene_seconds(corpus, character);
  stats.compression_rate = selected_dur > 0.0 ? active / selected_dur : 0.0;
  stats.generation_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return summary;
}

}  // namespace detail

// Full summary: per narrative episode, greedy selection under the per-episode
// budget; the result is the chronological concatenation across episodes.
inline Summary build_full_summary(const Corpus& corpus, const std::string& character,
                                  const Params& params, const std::vector<Lsu>& candidates) {
  const auto started = std::chrono::steady_clock::now();
  params.weights.validate();
  const CharacterAnalysis analysis = analyze_character(corpus, character, params);
  const std::vector<double> sizes = shot_sizes(corpus);
  const std::vector<Candidate> pool =
      detail::build_pool(corpus, candidates, character, &analysis, params.weights, sizes);

  std::map<int, std::vector<int>> by_episode;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (pool[i].episode) by_episode[*pool[i].episode].push_back(static_cast<int>(i));

  std::vector<int> chosen;
  for (const auto& [episode, members] : by_episode) {
    const SelectionProblem problem = detail::make_problem(pool, members);
    for (const int local : greedy_select(problem, params.budget_s).selected)
      chosen.push_back(members[local]);
  }

  Summary summary;
  summary.kind = "full";
  summary.character = character;
  summary.lambda = params.weights;
  summary.tau = params.tau;
  summary.budget_s = params.budget_s;
  return detail::finish_summary(corpus, character, pool, std::move(chosen), std::move(summary),
                                started);
}

// Style summary: one global pool (soliloquies included) weighted only by shot
// size and musicality, selected greedily until the target duration is filled.
inline Summary build_style_summary(const Corpus& corpus, const std::string& character,
                                   const Params& params, double target_duration_s,
                                   const std::vector<Lsu>& candidates) {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<double> sizes = shot_sizes(corpus);
  const std::vector<Candidate> pool =
      detail::build_pool(corpus, candidates, character, nullptr, kStyleWeights, sizes);

  std::vector<int> members(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) members[i] = static_cast<int>(i);
  const SelectionProblem problem = detail::make_problem(pool, members);
  std::vector<int> chosen = greedy_select(problem, target_duration_s).selected;

  Summary summary;
  summary.kind = "sty";
  summary.character = character;
  summary.lambda = kStyleWeights;
  summary.tau = params.tau;
  summary.budget_s = target_duration_s;
  return detail::finish_summary(corpus, character, pool, std::move(chosen), std::move(summary),
                                started);
}

// Baseline summary: seeded uniform sampling without replacement over the
// verbally-active pool. A draw is kept when it overlaps no accepted unit and
// stays under 1.05x the target; sampling stops once the total reaches 0.95x
// the target or the pool runs out.
inline Summary build_baseline_summary(const Corpus& corpus, const std::string& character,
                                      const Params& params, double target_duration_s,
                                      std::uint64_t seed, const std::vector<Lsu>& candidates) {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<double> sizes = shot_sizes(corpus);
  const std::vector<Candidate> pool =
      detail::build_pool(corpus, candidates, character, nullptr, kStyleWeights, sizes);

  SplitMix64 rng(seed);
  std::vector<int> remaining(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) remaining[i] = static_cast<int>(i);
  std::vector<int> chosen;
  double total = 0.0;
  while (!remaining.empty() && total < 0.95 * target_duration_s) {
    const std::size_t k = rng.next_below(remaining.size());
    const int cand = remaining[k];
    remaining[k] = remaining.back();
    remaining.pop_back();
    if (total + pool[cand].duration_s() > 1.05 * target_duration_s) continue;
    bool clash = false;
    for (const int j : chosen)
      if (lsus_overlap(pool[cand].lsu, pool[j].lsu)) {
        clash = true;
        break;
      }
    if (clash) continue;
    chosen.push_back(cand);
    total += pool[cand].duration_s();
  }

  Summary summary;
  summary.kind = "bsl";
  summary.character = character;
  summary.seed = seed;
  summary.lambda = kStyleWeights;
  summary.tau = params.tau;
  summary.budget_s = target_duration_s;
  return detail::finish_summary(corpus, character, pool, std::move(chosen), std::move(summary),
                                started);
}

// Overlapping time between two summaries as a percentage of their mean
// duration.
inline double pairwise_overlap(const Summary& a, const Summary& b) {
  double shared_ms = 0.0;
  for (const SummarySegment& x : a.segments)
    for (const SummarySegment& y : b.segments) {
      const std::int64_t lo = std::max(x.start_ms, y.start_ms);
      const std::int64_t hi = std::min(x.end_ms, y.end_ms);
      if (hi > lo) shared_ms += static_cast<double>(hi - lo);
    }
  double dur_a = 0.0, dur_b = 0.0;
  for (const SummarySegment& x : a.segments) dur_a += static_cast<double>(x.end_ms - x.start_ms);
  for (const SummarySegment& y : b.segments) dur_b += static_cast<double>(y.end_ms - y.start_ms);
  const double mean = 0.5 * (dur_a + dur_b);
  if (mean <= 0.0) return 0.0;
  return 100.0 * shared_ms / mean;
}

}  // namespace storycut
