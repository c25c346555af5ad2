#pragma once
// Corpus ingest: parses the annotation/feature files that stand in for raw
// audiovisual processing, validates every structural invariant, and exposes
// the cross-linked, immutable corpus used by the rest of the pipeline.
//
// Files (under one corpus directory):
//   shots.csv              shot_id,start_ms,end_ms
//   scenes.csv             scene_id,season,episode,start_ms,end_ms
//   turns.jsonl            {"start_ms","end_ms","speaker","scene_id":int|null}
//   shot_histograms.jsonl  {"shot_id","frame":0..4,"blocks":[[...],...]}   (optional)
//   shot_similarity.csv    shot_i,shot_j with i<j, one pair per line       (optional)
//   faces.jsonl            {"shot_id","frame":0..4,"box_height_frac":f|null} (optional)
//   chroma.jsonl           {"time_ms","chroma":[12 floats]}                (optional)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "storycut/error.hpp"
#include "storycut/types.hpp"

namespace storycut {

struct Corpus {
  std::vector<Shot> shots;
  std::vector<Scene> scenes;
  std::vector<SpeakerTurn> turns;  // sorted by (start_ms, end_ms, speaker)
  std::vector<std::string> characters;  // sorted distinct speakers

  // Sized n_shots (or empty when the file is absent). Each shot carries
  // exactly 5 frame histograms or none at all.
  std::vector<std::vector<BlockHistogram>> shot_histograms;
  // Sized n_shots (or empty when the file is absent).
  std::vector<FaceFrames> face_heights;
  std::vector<ChromaFrame> chroma;  // sorted by time_ms
  std::optional<std::vector<std::pair<int, int>>> similarity_pairs;  // i<j, |i-j|>=2

  // Derived indexes, built by finalize().
  std::vector<std::vector<int>> turns_by_scene;
  std::vector<std::vector<int>> turns_by_character;

  int n_shots() const { return static_cast<int>(shots.size()); }
  int n_scenes() const { return static_cast<int>(scenes.size()); }
  int n_turns() const { return static_cast<int>(turns.size()); }

  std::optional<int> character_index(std::string_view name) const {
    auto it = std::lower_bound(characters.begin(), characters.end(), name);
    if (it == characters.end() || *it != name) return std::nullopt;
    return static_cast<int>(it - characters.begin());
  }

  // Scene containing the given timestamp under the right-open convention, or
  // nullopt when the timestamp falls in a gap or outside the timeline.
  std::optional<int> scene_containing(double time_ms) const {
    int lo = 0, hi = n_scenes() - 1, found = -1;
    while (lo <= hi) {
      const int mid = (lo + hi) / 2;
      if (static_cast<double>(scenes[mid].start_ms) <= time_ms) {
        found = mid;
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    if (found >= 0 && scenes[found].contains(time_ms)) return found;
    return std::nullopt;
  }

  int require_character(std::string_view name) const {
    auto idx = character_index(name);
    if (!idx) throw Error(ErrorKind::UnknownCharacter, std::string(name));
    return *idx;
  }

  void finalize();  // validates cross-links and builds indexes
};

// Fills in missing scene ids by midpoint containment: each turn belongs to
// the unique scene whose right-open span contains the turn midpoint. Turns
// that already carry a scene id are checked against the same rule.
inline void assign_turns_to_scenes(std::vector<SpeakerTurn>& turns, const std::vector<Scene>& scenes);

// A character is verbally active on a span iff it owns at least one turn
// overlapping the span by more than zero milliseconds.
inline bool verbally_active(const Corpus& corpus, std::string_view character,
                            std::int64_t span_start_ms, std::int64_t span_end_ms);

Corpus load_corpus(const std::filesystem::path& root);
void save_corpus(const Corpus& corpus, const std::filesystem::path& root);

// ---------------------------------------------------------------------------

namespace detail {

inline std::string loc(const std::string& file, int line) {
  return file + ":" + std::to_string(line);
}

inline std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingFile, path.string());
  return in;
}

struct CsvRow {
  int line = 0;
  std::vector<std::string> fields;
};

inline std::vector<CsvRow> read_csv(const std::filesystem::path& path, std::size_t n_fields) {
  std::ifstream in = open_or_throw(path);
  std::vector<CsvRow> rows;
  std::string line;
  int line_no = 0;
  const std::string name = path.filename().string();
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    CsvRow row;
    row.line = line_no;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.fields.push_back(field);
    if (row.fields.size() != n_fields) {
      throw Error(ErrorKind::ParseError, loc(name, line_no) + ": expected " +
                                             std::to_string(n_fields) + " fields, got " +
                                             std::to_string(row.fields.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::int64_t parse_int(const std::string& field, const std::string& file, int line) {
  std::size_t pos = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(field, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, loc(file, line) + ": not an integer: '" + field + "'");
  }
  while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos]))) ++pos;
  if (pos != field.size())
    throw Error(ErrorKind::ParseError, loc(file, line) + ": not an integer: '" + field + "'");
  return value;
}

// Iterates non-empty lines of a JSONL file, handing each parsed object to fn.
template <typename Fn>
void for_each_jsonl(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in = open_or_throw(path);
  std::string line;
  int line_no = 0;
  const std::string name = path.filename().string();
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, loc(name, line_no) + ": " + e.what());
    }
    try {
      fn(record, line_no);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, loc(name, line_no) + ": " + e.what());
    }
  }
}

}  // namespace detail

inline void assign_turns_to_scenes(std::vector<SpeakerTurn>& turns,
                                   const std::vector<Scene>& scenes) {
  for (auto& turn : turns) {
    const double mid = turn.midpoint_ms();
    int lo = 0, hi = static_cast<int>(scenes.size()) - 1, found = -1;
    while (lo <= hi) {
      const int m = (lo + hi) / 2;
      if (static_cast<double>(scenes[m].start_ms) <= mid) {
        found = m;
        lo = m + 1;
      } else {
        hi = m - 1;
      }
    }
    const bool covered = found >= 0 && scenes[found].contains(mid);
    if (turn.scene_id) {
      const int declared = *turn.scene_id;
      if (declared < 0 || declared >= static_cast<int>(scenes.size()))
        throw Error(ErrorKind::DanglingReference,
                    "turn at " + std::to_string(turn.start_ms) + "ms references scene " +
                        std::to_string(declared),
                    "scene", declared);
      if (!scenes[declared].contains(mid))
        throw Error(ErrorKind::UncoveredTurn,
                    "midpoint of turn [" + std::to_string(turn.start_ms) + "," +
                        std::to_string(turn.end_ms) + "]ms lies outside declared scene " +
                        std::to_string(declared));
      continue;
    }
    if (!covered)
      throw Error(ErrorKind::UncoveredTurn,
                  "no scene covers midpoint of turn [" + std::to_string(turn.start_ms) + "," +
                      std::to_string(turn.end_ms) + "]ms");
    turn.scene_id = found;
  }
}

inline bool verbally_active(const Corpus& corpus, std::string_view character,
                            std::int64_t span_start_ms, std::int64_t span_end_ms) {
  const int who = corpus.require_character(character);
  for (const int t : corpus.turns_by_character[who]) {
    const SpeakerTurn& turn = corpus.turns[t];
    if (turn.start_ms >= span_end_ms) break;  // turns sorted by start
    if (turn.end_ms > span_start_ms) return true;
  }
  return false;
}

inline void Corpus::finalize() {
  // Shots: dense ids, strictly ordered, non-overlapping.
  std::sort(shots.begin(), shots.end(),
            [](const Shot& a, const Shot& b) { return a.shot_id < b.shot_id; });
  for (int i = 0; i < n_shots(); ++i) {
    const Shot& s = shots[i];
    if (s.shot_id != i)
      throw Error(ErrorKind::ParseError,
                  "shot ids are not dense: expected " + std::to_string(i) + ", found " +
                      std::to_string(s.shot_id));
    if (s.end_ms <= s.start_ms)
      throw Error(ErrorKind::NonMonotoneTimeline,
                  "shot " + std::to_string(i) + " has non-positive duration");
    if (i > 0 && s.start_ms < shots[i - 1].end_ms)
      throw Error(ErrorKind::NonMonotoneTimeline,
                  "shot " + std::to_string(i) + " overlaps shot " + std::to_string(i - 1));
  }

  // Scenes: same discipline.
  std::sort(scenes.begin(), scenes.end(),
            [](const Scene& a, const Scene& b) { return a.scene_id < b.scene_id; });
  for (int i = 0; i < n_scenes(); ++i) {
    const Scene& s = scenes[i];
    if (s.scene_id != i)
      throw Error(ErrorKind::ParseError,
                  "scene ids are not dense: expected " + std::to_string(i) + ", found " +
                      std::to_string(s.scene_id));
    if (s.end_ms <= s.start_ms)
      throw Error(ErrorKind::NonMonotoneTimeline,
                  "scene " + std::to_string(i) + " has non-positive duration");
    if (i > 0 && s.start_ms < scenes[i - 1].end_ms)
      throw Error(ErrorKind::NonMonotoneTimeline,
                  "scene " + std::to_string(i) + " overlaps scene " + std::to_string(i - 1));
  }

  // Turns: canonical order makes scene assignment and interaction adjacency
  // independent of input line order.
  for (const SpeakerTurn& t : turns) {
    if (t.end_ms <= t.start_ms)
      throw Error(ErrorKind::NonMonotoneTimeline,
                  "turn at " + std::to_string(t.start_ms) + "ms has non-positive duration");
    if (t.speaker.empty())
      throw Error(ErrorKind::ParseError, "turn with empty speaker name");
  }
  std::sort(turns.begin(), turns.end(), [](const SpeakerTurn& a, const SpeakerTurn& b) {
    return std::tie(a.start_ms, a.end_ms, a.speaker) < std::tie(b.start_ms, b.end_ms, b.speaker);
  });
  assign_turns_to_scenes(turns, scenes);

  characters.clear();
  for (const SpeakerTurn& t : turns) characters.push_back(t.speaker);
  std::sort(characters.begin(), characters.end());
  characters.erase(std::unique(characters.begin(), characters.end()), characters.end());

  turns_by_scene.assign(scenes.size(), {});
  turns_by_character.assign(characters.size(), {});
  for (int i = 0; i < n_turns(); ++i) {
    turns[i].speaker_index = *character_index(turns[i].speaker);
    turns_by_scene[*turns[i].scene_id].push_back(i);
    turns_by_character[turns[i].speaker_index].push_back(i);
  }

  if (!shot_histograms.empty() && shot_histograms.size() != shots.size())
    shot_histograms.resize(shots.size());
  if (!face_heights.empty() && face_heights.size() != shots.size())
    face_heights.resize(shots.size());

  std::stable_sort(chroma.begin(), chroma.end(),
                   [](const ChromaFrame& a, const ChromaFrame& b) { return a.time_ms < b.time_ms; });
}

inline Corpus load_corpus(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  Corpus corpus;

  {
    const auto rows = detail::read_csv(root / "shots.csv", 3);
    for (const auto& row : rows) {
      Shot s;
      s.shot_id = static_cast<int>(detail::parse_int(row.fields[0], "shots.csv", row.line));
      s.start_ms = detail::parse_int(row.fields[1], "shots.csv", row.line);
      s.end_ms = detail::parse_int(row.fields[2], "shots.csv", row.line);
      corpus.shots.push_back(s);
    }
  }
  {
    const auto rows = detail::read_csv(root / "scenes.csv", 5);
    for (const auto& row : rows) {
      Scene s;
      s.scene_id = static_cast<int>(detail::parse_int(row.fields[0], "scenes.csv", row.line));
      s.season = static_cast<int>(detail::parse_int(row.fields[1], "scenes.csv", row.line));
      s.episode = static_cast<int>(detail::parse_int(row.fields[2], "scenes.csv", row.line));
      s.start_ms = detail::parse_int(row.fields[3], "scenes.csv", row.line);
      s.end_ms = detail::parse_int(row.fields[4], "scenes.csv", row.line);
      corpus.scenes.push_back(s);
    }
  }

  detail::for_each_jsonl(root / "turns.jsonl", [&](const nlohmann::json& j, int) {
    SpeakerTurn t;
    t.start_ms = j.at("start_ms").get<std::int64_t>();
    t.end_ms = j.at("end_ms").get<std::int64_t>();
    t.speaker = j.at("speaker").get<std::string>();
    if (j.contains("scene_id") && !j.at("scene_id").is_null())
      t.scene_id = j.at("scene_id").get<int>();
    corpus.turns.push_back(std::move(t));
  });

  const int n_shots = static_cast<int>(corpus.shots.size());

  if (fs::exists(root / "shot_histograms.jsonl")) {
    corpus.shot_histograms.assign(n_shots, {});
    std::vector<std::array<bool, kFramesPerShot>> seen(n_shots, std::array<bool, kFramesPerShot>{});
    int ref_grid = 0, ref_bins = 0;
    detail::for_each_jsonl(root / "shot_histograms.jsonl", [&](const nlohmann::json& j, int line) {
      const auto fail = [&](const std::string& msg) -> Error {
        return Error(ErrorKind::ParseError, detail::loc("shot_histograms.jsonl", line) + ": " + msg);
      };
      const int shot = j.at("shot_id").get<int>();
      if (shot < 0 || shot >= n_shots)
        throw Error(ErrorKind::DanglingReference,
                    detail::loc("shot_histograms.jsonl", line) + ": unknown shot " +
                        std::to_string(shot),
                    "shot", shot);
      const int frame = j.at("frame").get<int>();
      if (frame < 0 || frame >= kFramesPerShot) throw fail("frame index out of range");
      if (seen[shot][frame]) throw fail("duplicate frame for shot " + std::to_string(shot));
      seen[shot][frame] = true;

      const auto& blocks = j.at("blocks");
      if (!blocks.is_array() || blocks.empty()) throw fail("blocks must be a non-empty array");
      BlockHistogram h;
      const int n_blocks = static_cast<int>(blocks.size());
      const int grid = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_blocks))));
      if (grid * grid != n_blocks) throw fail("block count is not a square grid");
      h.grid = grid;
      for (const auto& block : blocks) {
        if (!block.is_array() || block.empty()) throw fail("block must be a non-empty array");
        if (h.bins == 0) h.bins = static_cast<int>(block.size());
        if (static_cast<int>(block.size()) != h.bins) throw fail("ragged block bin counts");
        double sum = 0.0;
        for (const auto& v : block) {
          const double x = v.get<double>();
          if (!std::isfinite(x) || x < 0.0) throw fail("histogram values must be finite and >= 0");
          h.values.push_back(x);
          sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-6) throw fail("block is not L1-normalized");
      }
      if (ref_grid == 0) {
        ref_grid = h.grid;
        ref_bins = h.bins;
      } else if (h.grid != ref_grid || h.bins != ref_bins) {
        throw fail("histogram shape differs from the rest of the corpus");
      }
      auto& frames = corpus.shot_histograms[shot];
      if (frames.empty()) frames.resize(kFramesPerShot);
      frames[frame] = std::move(h);
    });
    for (int s = 0; s < n_shots; ++s) {
      if (corpus.shot_histograms[s].empty()) continue;
      for (int f = 0; f < kFramesPerShot; ++f)
        if (!seen[s][f])
          throw Error(ErrorKind::ParseError, "shot_histograms.jsonl: shot " + std::to_string(s) +
                                                 " is missing frame " + std::to_string(f));
    }
  }

  if (fs::exists(root / "shot_similarity.csv")) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& row : detail::read_csv(root / "shot_similarity.csv", 2)) {
      const int i = static_cast<int>(detail::parse_int(row.fields[0], "shot_similarity.csv", row.line));
      const int j = static_cast<int>(detail::parse_int(row.fields[1], "shot_similarity.csv", row.line));
      if (i < 0 || i >= n_shots)
        throw Error(ErrorKind::DanglingReference,
                    detail::loc("shot_similarity.csv", row.line) + ": unknown shot " +
                        std::to_string(i),
                    "shot", i);
      if (j < 0 || j >= n_shots)
        throw Error(ErrorKind::DanglingReference,
                    detail::loc("shot_similarity.csv", row.line) + ": unknown shot " +
                        std::to_string(j),
                    "shot", j);
      if (i >= j)
        throw Error(ErrorKind::ParseError,
                    detail::loc("shot_similarity.csv", row.line) + ": pairs must satisfy i < j");
      if (j - i < 2)
        throw Error(ErrorKind::ParseError,
                    detail::loc("shot_similarity.csv", row.line) +
                        ": consecutive shots cannot be similar");
      pairs.emplace_back(i, j);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    corpus.similarity_pairs = std::move(pairs);
  }

  if (fs::exists(root / "faces.jsonl")) {
    corpus.face_heights.assign(n_shots, {});
    std::vector<std::array<bool, kFramesPerShot>> seen(n_shots, std::array<bool, kFramesPerShot>{});
    detail::for_each_jsonl(root / "faces.jsonl", [&](const nlohmann::json& j, int line) {
      const int shot = j.at("shot_id").get<int>();
      if (shot < 0 || shot >= n_shots)
        throw Error(ErrorKind::DanglingReference,
                    detail::loc("faces.jsonl", line) + ": unknown shot " + std::to_string(shot),
                    "shot", shot);
      const int frame = j.at("frame").get<int>();
      if (frame < 0 || frame >= kFramesPerShot)
        throw Error(ErrorKind::ParseError, detail::loc("faces.jsonl", line) + ": frame out of range");
      if (seen[shot][frame])
        throw Error(ErrorKind::ParseError,
                    detail::loc("faces.jsonl", line) + ": duplicate frame for shot " +
                        std::to_string(shot));
      seen[shot][frame] = true;
      if (!j.contains("box_height_frac") || j.at("box_height_frac").is_null()) return;
      double h = j.at("box_height_frac").get<double>();
      if (!std::isfinite(h) || h < 0.0)
        throw Error(ErrorKind::ParseError,
                    detail::loc("faces.jsonl", line) + ": box height must be finite and >= 0");
      corpus.face_heights[shot][frame] = std::min(h, kMaxFaceBoxFrac);
    });
  }

  if (fs::exists(root / "chroma.jsonl")) {
    detail::for_each_jsonl(root / "chroma.jsonl", [&](const nlohmann::json& j, int line) {
      ChromaFrame frame;
      frame.time_ms = j.at("time_ms").get<std::int64_t>();
      const auto& arr = j.at("chroma");
      if (!arr.is_array() || arr.size() != 12)
        throw Error(ErrorKind::ParseError,
                    detail::loc("chroma.jsonl", line) + ": chroma must have exactly 12 components");
      for (int i = 0; i < 12; ++i) {
        const double v = arr[i].get<double>();
        if (!std::isfinite(v) || v < 0.0)
          throw Error(ErrorKind::ParseError,
                      detail::loc("chroma.jsonl", line) + ": chroma values must be finite and >= 0");
        frame.chroma[i] = v;
      }
      corpus.chroma.push_back(frame);
    });
  }

  corpus.finalize();
  return corpus;
}

inline void save_corpus(const Corpus& corpus, const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  fs::create_directories(root);

  {
    std::ofstream out(root / "shots.csv");
    for (const Shot& s : corpus.shots)
      out << s.shot_id << ',' << s.start_ms << ',' << s.end_ms << '\n';
  }
  {
    std::ofstream out(root / "scenes.csv");
    for (const Scene& s : corpus.scenes)
      out << s.scene_id << ',' << s.season << ',' << s.episode << ',' << s.start_ms << ','
          << s.end_ms << '\n';
  }
  {
    std::ofstream out(root / "turns.jsonl");
    for (const SpeakerTurn& t : corpus.turns) {
      nlohmann::ordered_json j;
      j["start_ms"] = t.start_ms;
      j["end_ms"] = t.end_ms;
      j["speaker"] = t.speaker;
      if (t.scene_id)
        j["scene_id"] = *t.scene_id;
      else
        j["scene_id"] = nullptr;
      out << j.dump() << '\n';
    }
  }
  if (!corpus.shot_histograms.empty()) {
    std::ofstream out(root / "shot_histograms.jsonl");
    for (int s = 0; s < corpus.n_shots(); ++s) {
      const auto& frames = corpus.shot_histograms[s];
      for (int f = 0; f < static_cast<int>(frames.size()); ++f) {
        const BlockHistogram& h = frames[f];
        nlohmann::ordered_json j;
        j["shot_id"] = s;
        j["frame"] = f;
        auto blocks = nlohmann::ordered_json::array();
        for (int b = 0; b < h.block_count(); ++b) {
          auto block = nlohmann::ordered_json::array();
          for (const double v : h.block(b)) block.push_back(v);
          blocks.push_back(std::move(block));
        }
        j["blocks"] = std::move(blocks);
        out << j.dump() << '\n';
      }
    }
  }
  if (corpus.similarity_pairs) {
    std::ofstream out(root / "shot_similarity.csv");
    for (const auto& [i, j] : *corpus.similarity_pairs) out << i << ',' << j << '\n';
  }
  if (!corpus.face_heights.empty()) {
    std::ofstream out(root / "faces.jsonl");
    for (int s = 0; s < corpus.n_shots(); ++s) {
      for (int f = 0; f < kFramesPerShot; ++f) {
        if (!corpus.face_heights[s][f]) continue;
        nlohmann::ordered_json j;
        j["shot_id"] = s;
        j["frame"] = f;
        j["box_height_frac"] = *corpus.face_heights[s][f];
        out << j.dump() << '\n';
      }
    }
  }
  if (!corpus.chroma.empty()) {
    std::ofstream out(root / "chroma.jsonl");
    for (const ChromaFrame& frame : corpus.chroma) {
      nlohmann::ordered_json j;
      j["time_ms"] = frame.time_ms;
      j["chroma"] = frame.chroma;
      out << j.dump() << '\n';
    }
  }
}

}  // namespace storycut
