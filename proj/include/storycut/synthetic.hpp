#pragma once
// Deterministic synthetic corpus generator for demos, fixtures, and
// benchmarks. Builds a serialized narrative around one hero character whose
// social cast rotates by phase: dialogue blocks of recurring shots, speaker
// turns, face tracks, and background-music spans.

#include <cstdint>
#include <string>
#include <vector>

#include "storycut/corpus.hpp"
#include "storycut/util.hpp"

namespace storycut {

struct SynthSpec {
  std::string hero = "Arya";
  int phases = 3;
  int scenes_per_phase = 40;
  int buffer_scenes = 0;        // hero-absent scenes inserted between phases
  double scene_len_s = 40.0;
  int blocks_per_scene = 2;     // dialogue blocks per scene
  double soliloquy_rate = 0.10;     // hero speaks alone
  double second_cast_rate = 0.18;   // hero talks to the phase's second cast member
  double extras_block_rate = 0.08;  // cast-only block, hero silent
  double nested_block_rate = 0.06;  // long unit with an inner recurring pattern
  double short_block_rate = 0.50;   // 3-shot blocks; the rest are 5-shot
  double closeup_rate = 0.40;
  double musical_rate = 0.45;
  double chroma_hz = 2.0;
  bool with_histograms = false;  // otherwise a similarity pair list is attached
  int hist_bins = 128;           // bins per block when histograms are generated
  std::uint64_t seed = 20160424;
  // Cast of two speakers per phase, cycled when phases exceed the list.
  std::vector<std::vector<std::string>> casts = {
      {"Hot Pie", "Gendry"},   {"Tywin", "Lorch"},    {"Beric", "Thoros"},
      {"Jaqen", "Waif"},       {"Sandor", "Brienne"}, {"Ned", "Syrio"},
      {"Tyrion", "Varys"},     {"Sam", "Jon"},        {"Davos", "Melisandre"},
      {"Margaery", "Olenna"}};
};

namespace synth_detail {

struct MusicSpan {
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  int note = 0;
};

struct Builder {
  const SynthSpec& spec;
  SplitMix64 rng;
  Corpus corpus;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> shot_class;  // class id per shot; equal ids look alike
  std::vector<MusicSpan> music;
  int next_class = 0;

  explicit Builder(const SynthSpec& s) : spec(s), rng(s.seed) {}

  std::int64_t jitter_ms(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng.next_below(static_cast<std::size_t>(hi - lo + 1)));
  }

  int add_shot(std::int64_t start_ms, std::int64_t end_ms, int cls) {
    const int id = static_cast<int>(corpus.shots.size());
    corpus.shots.push_back({id, start_ms, end_ms});
    corpus.face_heights.push_back({});
    shot_class.push_back(cls);
    return id;
  }

  void add_faces(int shot, double base_height) {
    FaceFrames frames{};
    for (int f = 0; f < kFramesPerShot; ++f) {
      if (rng.next_unit() < 0.15) continue;  // face lost in this frame
      const double h = base_height + rng.next_range(-0.08, 0.08);
      frames[f] = std::max(0.02, h);
    }
    corpus.face_heights[shot] = frames;
  }

  void add_filler(std::int64_t& cursor, std::int64_t max_end) {
    const std::int64_t dur = jitter_ms(1800, 3200);
    if (cursor + dur > max_end) return;
    const int shot = add_shot(cursor, cursor + dur, next_class++);
    if (rng.next_unit() < 0.3) add_faces(shot, rng.next_range(0.03, 0.18));
    cursor += dur;
  }

  // Alternating speaker turns covering [start, end).
  void add_turns(std::int64_t start, std::int64_t end, const std::vector<std::string>& speakers) {
    std::int64_t cursor = start + jitter_ms(40, 120);
    std::size_t who = 0;
    while (cursor + 700 < end) {
      std::int64_t dur = jitter_ms(1300, 2400);
      if (cursor + dur > end - 40) dur = end - 40 - cursor;
      if (dur < 400) break;
      corpus.turns.push_back({cursor, cursor + dur, speakers[who % speakers.size()], {}, -1});
      cursor += dur + jitter_ms(0, 140);
      who++;
    }
  }

  // A dialogue block: alternating recurring shots (A B A or A B A B A), the
  // matching speaker turns, face tracks, and optionally a music span.
  void add_block(std::int64_t& cursor, std::int64_t max_end,
                 const std::vector<std::string>& speakers, bool nested) {
    const bool short_block = !nested && rng.next_unit() < spec.short_block_rate;
    const int n_shots = nested ? 9 : (short_block ? 3 : 5);
    std::int64_t shot_lo = short_block ? 1750 : 1900;
    std::int64_t shot_hi = short_block ? 2300 : 2750;
    if (nested) {
      shot_lo = 1950;
      shot_hi = 2400;
    }
    std::vector<std::int64_t> durations(n_shots);
    std::int64_t total = 0;
    for (auto& d : durations) {
      d = jitter_ms(shot_lo, shot_hi);
      total += d;
    }
    if (cursor + total > max_end) return;

    const std::int64_t block_start = cursor;
    const int class_a = next_class++;
    const int class_b = next_class++;
    const int class_outer = nested ? next_class++ : -1;
    std::vector<int> shots;
    for (int k = 0; k < n_shots; ++k) {
      int cls;
      if (nested) {
        // outer f [A B A B A] f outer
        if (k == 0 || k == n_shots - 1)
          cls = class_outer;
        else if (k == 1 || k == n_shots - 2)
          cls = next_class++;
        else
          cls = (k % 2 == 0) ? class_a : class_b;
      } else {
        cls = (k % 2 == 0) ? class_a : class_b;
      }
      shots.push_back(add_shot(cursor, cursor + durations[k], cls));
      cursor += durations[k];
    }
    for (std::size_t i = 0; i < shots.size(); ++i)
      for (std::size_t j = i + 2; j < shots.size(); ++j)
        if (shot_class[shots[i]] == shot_class[shots[j]])
          pairs.emplace_back(shots[i], shots[j]);

    const double base = rng.next_unit() < spec.closeup_rate ? rng.next_range(0.55, 0.95)
                                                            : rng.next_range(0.25, 0.55);
    for (const int shot : shots) add_faces(shot, base + rng.next_range(-0.05, 0.05));

    add_turns(block_start, cursor, speakers);

    if (rng.next_unit() < spec.musical_rate)
      music.push_back({block_start, cursor, static_cast<int>(rng.next_below(12))});
  }

  void add_scene_content(const std::vector<std::string>& cast, bool hero_present,
                         std::int64_t scene_start, std::int64_t scene_end) {
    std::int64_t cursor = scene_start + jitter_ms(0, 300);
    add_filler(cursor, scene_end);
    for (int b = 0; b < spec.blocks_per_scene; ++b) {
      std::vector<std::string> speakers;
      if (!hero_present || rng.next_unit() < spec.extras_block_rate) {
        speakers = {cast[0], cast[1]};
      } else if (rng.next_unit() < spec.soliloquy_rate) {
        speakers = {spec.hero};
      } else if (rng.next_unit() < spec.second_cast_rate) {
        speakers = {spec.hero, cast[1]};
      } else {
        speakers = {spec.hero, cast[0]};
      }
      const bool nested = rng.next_unit() < spec.nested_block_rate;
      add_block(cursor, scene_end - 200, speakers, nested);
      if (b + 1 < spec.blocks_per_scene) {
        cursor += jitter_ms(200, 600);
        add_filler(cursor, scene_end);
      }
    }
    add_filler(cursor, scene_end);
  }

  void add_chroma(std::int64_t total_end) {
    const std::int64_t step = static_cast<std::int64_t>(1000.0 / spec.chroma_hz);
    std::size_t span = 0;
    for (std::int64_t t = 0; t < total_end; t += step) {
      while (span < music.size() && music[span].end_ms <= t) ++span;
      ChromaFrame frame;
      frame.time_ms = t;
      const bool musical = span < music.size() && music[span].start_ms <= t;
      if (musical) {
        for (int i = 0; i < 12; ++i) frame.chroma[i] = 0.12 + rng.next_range(0.0, 0.04);
        frame.chroma[music[span].note] = 3.0 + rng.next_range(-0.1, 0.1);
      } else {
        for (int i = 0; i < 12; ++i) frame.chroma[i] = rng.next_range(0.3, 1.0);
      }
      corpus.chroma.push_back(frame);
    }
  }

  // Per-class block-histogram prototypes: a handful of active bins per block,
  // so distinct classes sit far apart and instances of one class sit close.
  void add_histograms() {
    constexpr int kGrid = 3;
    const int kBins = spec.hist_bins;
    std::vector<std::vector<double>> prototypes(next_class);
    for (int cls = 0; cls < next_class; ++cls) {
      auto& proto = prototypes[cls];
      proto.assign(kGrid * kGrid * kBins, 0.0);
      for (int blk = 0; blk < kGrid * kGrid; ++blk) {
        double sum = 0.0;
        for (int k = 0; k < 4; ++k) {
          const int bin = static_cast<int>(rng.next_below(kBins));
          const double mass = rng.next_range(0.5, 1.5);
          proto[blk * kBins + bin] += mass;
          sum += mass;
        }
        for (int i = 0; i < kBins; ++i) proto[blk * kBins + i] /= sum;
      }
    }
    corpus.shot_histograms.assign(corpus.shots.size(), {});
    for (std::size_t shot = 0; shot < corpus.shots.size(); ++shot) {
      const auto& proto = prototypes[shot_class[shot]];
      std::vector<double> shot_values(proto.size());
      for (std::size_t i = 0; i < proto.size(); ++i)
        shot_values[i] = proto[i] > 0.0 ? proto[i] * (1.0 + rng.next_range(-0.10, 0.10)) : 0.0;
      auto& frames = corpus.shot_histograms[shot];
      frames.resize(kFramesPerShot);
      for (int f = 0; f < kFramesPerShot; ++f) {
        BlockHistogram h;
        h.grid = kGrid;
        h.bins = kBins;
        h.values.resize(shot_values.size());
        for (std::size_t i = 0; i < shot_values.size(); ++i)
          h.values[i] =
              shot_values[i] > 0.0 ? shot_values[i] * (1.0 + rng.next_range(-0.05, 0.05)) : 0.0;
        for (int blk = 0; blk < kGrid * kGrid; ++blk) {
          double sum = 0.0;
          for (int i = 0; i < kBins; ++i) sum += h.values[blk * kBins + i];
          for (int i = 0; i < kBins; ++i) h.values[blk * kBins + i] /= sum;
        }
        frames[f] = std::move(h);
      }
    }
  }

  Corpus build() {
    const std::int64_t scene_len = static_cast<std::int64_t>(spec.scene_len_s * 1000.0);

    // scene plan: phases of regular scenes with optional hero-absent buffers
    struct ScenePlan {
      int phase;
      bool buffer;
    };
    std::vector<ScenePlan> plan;
    for (int ph = 0; ph < spec.phases; ++ph) {
      for (int k = 0; k < spec.scenes_per_phase; ++k) plan.push_back({ph, false});
      if (ph + 1 < spec.phases)
        for (int k = 0; k < spec.buffer_scenes; ++k) plan.push_back({ph, true});
    }

    std::int64_t t = 0;
    for (std::size_t s = 0; s < plan.size(); ++s) {
      const auto [phase, buffer] = plan[s];
      const std::int64_t scene_start = t;
      const std::int64_t scene_end = t + scene_len;
      corpus.scenes.push_back({static_cast<int>(s), phase + 1,
                               static_cast<int>(s) % 10 + 1, scene_start, scene_end});
      const auto& cast = spec.casts[phase % spec.casts.size()];
      add_scene_content(cast, !buffer, scene_start, scene_end);
      t = scene_end;
    }

    add_chroma(t);

    if (spec.with_histograms) {
      add_histograms();
    } else {
      std::sort(pairs.begin(), pairs.end());
      corpus.similarity_pairs = pairs;
    }

    corpus.finalize();
    return corpus;
  }
};

}  // namespace synth_detail

inline Corpus synthesize_corpus(const SynthSpec& spec) {
  synth_detail::Builder builder(spec);
  return builder.build();
}

}  // namespace storycut
