#pragma once
// Dynamic social network over speaker turns: verbal interaction times per
// scene, exponentially smoothed relationship vectors, and the scene-pair
// distance matrix of one character's storyline.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "storycut/corpus.hpp"
#include "storycut/error.hpp"
#include "storycut/util.hpp"

namespace storycut {

inline constexpr double kSqrt2 = 1.4142135623730951;

// Verbal interaction seconds between an unordered character pair (a < b,
// indices into Corpus::characters) within one segment.
struct PairSeconds {
  int a = 0;
  int b = 0;
  double seconds = 0.0;
};

// Adjacency heuristic: each turn contributes its full duration once to the
// pair (its speaker, x) for every distinct other speaker x owning the
// immediately previous or next turn. Turns must be chronologically sorted and
// belong to a single segment.
inline std::vector<PairSeconds> interaction_times(const Corpus& corpus,
                                                  std::span<const int> turn_indices) {
  std::vector<PairSeconds> out;
  const auto add = [&out](int a, int b, double seconds) {
    if (a > b) std::swap(a, b);
    for (PairSeconds& rec : out)
      if (rec.a == a && rec.b == b) {
        rec.seconds += seconds;
        return;
      }
    out.push_back({a, b, seconds});
  };
  const int k = static_cast<int>(turn_indices.size());
  for (int t = 0; t < k; ++t) {
    const SpeakerTurn& turn = corpus.turns[turn_indices[t]];
    int neighbors[2];
    int n_neighbors = 0;
    if (t > 0) {
      const int prev = corpus.turns[turn_indices[t - 1]].speaker_index;
      if (prev != turn.speaker_index) neighbors[n_neighbors++] = prev;
    }
    if (t + 1 < k) {
      const int next = corpus.turns[turn_indices[t + 1]].speaker_index;
      if (next != turn.speaker_index && (n_neighbors == 0 || neighbors[0] != next))
        neighbors[n_neighbors++] = next;
    }
    for (int i = 0; i < n_neighbors; ++i) add(turn.speaker_index, neighbors[i], turn.duration_s());
  }
  std::sort(out.begin(), out.end(), [](const PairSeconds& x, const PairSeconds& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return out;
}

// Per-scene interaction records for the whole corpus, computed once.
inline std::vector<std::vector<PairSeconds>> interactions_by_scene(const Corpus& corpus) {
  std::vector<std::vector<PairSeconds>> by_scene(corpus.n_scenes());
  for (int sc = 0; sc < corpus.n_scenes(); ++sc)
    by_scene[sc] = interaction_times(corpus, corpus.turns_by_scene[sc]);
  return by_scene;
}

// Smoothed relationship weights of one character at one storyline scene.
// Weights are indexed by Corpus::characters and live in [0, 1).
struct RelationshipVector {
  int owner = -1;
  int scene_index = 0;  // position in the owner's storyline
  std::vector<double> weights;
};

struct SmoothingParams {
  double sigma = 10.0;        // scene-index decay constant
  std::optional<double> eta;  // saturation; default: mean positive energy
};

// Smoothed view of one character's social neighborhood across the storyline.
struct CharacterNetwork {
  int owner = -1;
  std::string owner_name;
  std::vector<int> storyline;  // global scene ids where the owner speaks
  std::vector<RelationshipVector> vectors;  // one per storyline scene
  double eta_used = 0.0;

  int length() const { return static_cast<int>(storyline.size()); }

  // Storyline position of a global scene, if the owner appears in it.
  std::optional<int> storyline_index(int scene_id) const {
    auto it = std::lower_bound(storyline.begin(), storyline.end(), scene_id);
    if (it == storyline.end() || *it != scene_id) return std::nullopt;
    return static_cast<int>(it - storyline.begin());
  }
};

// Two-sided exponential smoothing over scene index with a saturating squash:
//   E_u(owner, o) = sum_v exp(-|u - v| / sigma) * I_v(owner, o)
//   w_u(o)        = E / (E + eta)
// Vectors are reported at the owner's storyline scenes only. When eta is not
// given it defaults to the mean of the positive energies observed at those
// scenes, which puts the squash's half-way point at the strength of a typical
// active relationship. (A median would sit among the faint residual energies
// that the exponential tail leaves everywhere, saturating every weight and
// flattening the distance matrix.)
inline CharacterNetwork smooth_relationships(
    const Corpus& corpus, std::string_view owner_name, SmoothingParams params = {},
    const std::vector<std::vector<PairSeconds>>* by_scene_cache = nullptr) {
  if (!(params.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (params.eta && !(*params.eta > 0.0)) throw std::invalid_argument("eta must be positive");

  CharacterNetwork net;
  net.owner = corpus.require_character(owner_name);
  net.owner_name = std::string(owner_name);

  std::vector<std::vector<PairSeconds>> local;
  if (!by_scene_cache) {
    local = interactions_by_scene(corpus);
    by_scene_cache = &local;
  }
  const auto& by_scene = *by_scene_cache;

  for (int sc = 0; sc < corpus.n_scenes(); ++sc)
    for (const int t : corpus.turns_by_scene[sc])
      if (corpus.turns[t].speaker_index == net.owner) {
        net.storyline.push_back(sc);
        break;
      }

  const int n_chars = static_cast<int>(corpus.characters.size());
  // Owner's interaction seconds per (other character, scene).
  std::vector<std::vector<std::pair<int, double>>> seconds_with(n_chars);
  for (int sc = 0; sc < corpus.n_scenes(); ++sc)
    for (const PairSeconds& rec : by_scene[sc]) {
      if (rec.a == net.owner) seconds_with[rec.b].emplace_back(sc, rec.seconds);
      if (rec.b == net.owner) seconds_with[rec.a].emplace_back(sc, rec.seconds);
    }

  const int m = net.length();
  std::vector<std::vector<double>> energy(m, std::vector<double>(n_chars, 0.0));
  for (int o = 0; o < n_chars; ++o) {
    if (seconds_with[o].empty()) continue;
    for (int u = 0; u < m; ++u) {
      const int scene_u = net.storyline[u];
      double e = 0.0;
      for (const auto& [scene_v, sec] : seconds_with[o])
        e += std::exp(-std::abs(scene_u - scene_v) / params.sigma) * sec;
      energy[u][o] = e;
    }
  }

  double eta;
  if (params.eta) {
    eta = *params.eta;
  } else {
    double sum = 0.0;
    std::int64_t count = 0;
    for (const auto& row : energy)
      for (const double e : row)
        if (e > 0.0) {
          sum += e;
          ++count;
        }
    eta = count > 0 ? sum / static_cast<double>(count) : 1.0;
  }
  net.eta_used = eta;

  net.vectors.reserve(m);
  for (int u = 0; u < m; ++u) {
    RelationshipVector vec;
    vec.owner = net.owner;
    vec.scene_index = u;
    vec.weights.resize(n_chars, 0.0);
    for (int o = 0; o < n_chars; ++o) {
      const double e = energy[u][o];
      if (e > 0.0) vec.weights[o] = e / (e + eta);
    }
    net.vectors.push_back(std::move(vec));
  }
  return net;
}

inline double l2_norm(std::span<const double> v) {
  double sum = 0.0;
  for (const double x : v) sum += x * x;
  return std::sqrt(sum);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

// Euclidean distance between the L2-normalized vectors, in [0, sqrt(2)] for
// non-negative inputs. Conventions: two zero vectors are at distance 0, a
// zero vector is at distance sqrt(2) from any nonzero vector.
inline double vector_distance(std::span<const double> a, std::span<const double> b) {
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na == 0.0 && nb == 0.0) return 0.0;
  if (na == 0.0 || nb == 0.0) return kSqrt2;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] / na - b[i] / nb;
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

inline double vector_distance(const RelationshipVector& a, const RelationshipVector& b) {
  return vector_distance(std::span<const double>(a.weights), std::span<const double>(b.weights));
}

// Cosine similarity of two non-negative vectors, in [0, 1]. Undefined when
// either vector is zero.
inline std::optional<double> cosine_similarity(std::span<const double> a,
                                               std::span<const double> b) {
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  return std::clamp(dot(a, b) / (na * nb), 0.0, 1.0);
}

// Symmetric matrix of distances between the relationship vectors at every
// pair of storyline scenes.
struct DistanceMatrix {
  int n = 0;
  std::vector<double> values;

  double at(int t, int u) const { return values[static_cast<std::size_t>(t) * n + u]; }
  double& at(int t, int u) { return values[static_cast<std::size_t>(t) * n + u]; }
};

inline DistanceMatrix distance_matrix(const CharacterNetwork& net) {
  const int m = net.length();
  if (m == 0)
    throw Error(ErrorKind::EmptyStoryline, net.owner_name + " appears in no scene");
  DistanceMatrix d;
  d.n = m;
  d.values.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int t = 0; t < m; ++t)
    for (int u = t + 1; u < m; ++u) {
      const double dist = vector_distance(net.vectors[t], net.vectors[u]);
      d.at(t, u) = dist;
      d.at(u, t) = dist;
    }
  return d;
}

}  // namespace storycut
