#pragma once
// Corpus domain types. All timestamps are milliseconds on the global series
// timeline; ordinals are dense and 0-based.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace storycut {

struct Shot {
  int shot_id = 0;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;

  double duration_s() const { return static_cast<double>(end_ms - start_ms) / 1000.0; }
};

// Block grid of per-block HSV histograms for one sampled frame. Each block
// vector is L1-normalized; layout is block-major, blocks in row-major grid
// order.
struct BlockHistogram {
  int grid = 0;  // blocks per side
  int bins = 0;  // histogram bins per block
  std::vector<double> values;

  int block_count() const { return grid * grid; }
  std::span<const double> block(int b) const {
    return {values.data() + static_cast<std::size_t>(b) * bins, static_cast<std::size_t>(bins)};
  }
  bool same_shape(const BlockHistogram& other) const {
    return grid == other.grid && bins == other.bins;
  }
};

struct Scene {
  int scene_id = 0;
  int season = 0;
  int episode = 0;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;

  double duration_s() const { return static_cast<double>(end_ms - start_ms) / 1000.0; }
  // Scene spans are right-open: a timestamp on the boundary belongs to the
  // later scene.
  bool contains(double time_ms) const {
    return static_cast<double>(start_ms) <= time_ms && time_ms < static_cast<double>(end_ms);
  }
};

struct SpeakerTurn {
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  std::string speaker;
  std::optional<int> scene_id;  // always resolved after corpus load
  int speaker_index = -1;       // index into Corpus::characters, set on load

  double duration_s() const { return static_cast<double>(end_ms - start_ms) / 1000.0; }
  double midpoint_ms() const { return 0.5 * static_cast<double>(start_ms + end_ms); }
};

struct ChromaFrame {
  std::int64_t time_ms = 0;
  std::array<double, 12> chroma{};
};

// Largest detected face-box height per sampled frame, as a fraction of the
// video frame height. Absent when no face was detected.
using FaceFrames = std::array<std::optional<double>, 5>;

inline constexpr int kFramesPerShot = 5;
inline constexpr double kMaxFaceBoxFrac = 1.5;

}  // namespace storycut
