#pragma once
// Output artifacts: summary JSON and EDL files, diagnostic CSVs, grayscale
// heatmaps, and the run.json provenance record. Floats are rounded to 9
// significant digits before serialization so identical runs produce
// identical bytes.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "storycut/error.hpp"
#include "storycut/lsu.hpp"
#include "storycut/network.hpp"
#include "storycut/segmentation.hpp"
#include "storycut/summarize.hpp"
#include "storycut/util.hpp"

namespace storycut {

using Json = nlohmann::ordered_json;

inline Json to_json(const SummaryStats& stats) {
  Json j;
  j["n_candidates"] = stats.n_candidates;
  j["mean_candidate_dur_s"] = round9(stats.mean_candidate_dur_s);
  j["n_selected"] = stats.n_selected;
  j["mean_selected_dur_s"] = round9(stats.mean_selected_dur_s);
  j["duration_s"] = round9(stats.duration_s);
  j["compression_rate"] = round9(stats.compression_rate);
  j["generation_time_s"] = round9(stats.generation_time_s);
  return j;
}

inline Json to_json(const Summary& summary) {
  Json j;
  j["kind"] = summary.kind;
  j["character"] = summary.character;
  if (summary.seed) j["seed"] = *summary.seed;
  j["lambda"] = {round9(summary.lambda.social), round9(summary.lambda.shot_size),
                 round9(summary.lambda.musicality)};
  j["tau"] = round9(summary.tau);
  j["budget_s"] = round9(summary.budget_s);
  auto segments = Json::array();
  for (const SummarySegment& seg : summary.segments) {
    Json s;
    s["start_ms"] = seg.start_ms;
    s["end_ms"] = seg.end_ms;
    s["first_shot"] = seg.first_shot;
    s["last_shot"] = seg.last_shot;
    if (seg.episode)
      s["episode"] = *seg.episode;
    else
      s["episode"] = nullptr;
    segments.push_back(std::move(s));
  }
  j["segments"] = std::move(segments);
  j["stats"] = to_json(summary.stats);
  return j;
}

inline Summary summary_from_json(const Json& j) {
  Summary summary;
  summary.kind = j.at("kind").get<std::string>();
  summary.character = j.at("character").get<std::string>();
  if (j.contains("seed") && !j.at("seed").is_null())
    summary.seed = j.at("seed").get<std::uint64_t>();
  summary.lambda.social = j.at("lambda").at(0).get<double>();
  summary.lambda.shot_size = j.at("lambda").at(1).get<double>();
  summary.lambda.musicality = j.at("lambda").at(2).get<double>();
  summary.tau = j.at("tau").get<double>();
  summary.budget_s = j.at("budget_s").get<double>();
  for (const auto& s : j.at("segments")) {
    SummarySegment seg;
    seg.start_ms = s.at("start_ms").get<std::int64_t>();
    seg.end_ms = s.at("end_ms").get<std::int64_t>();
    seg.first_shot = s.at("first_shot").get<int>();
    seg.last_shot = s.at("last_shot").get<int>();
    if (!s.at("episode").is_null()) seg.episode = s.at("episode").get<int>();
    summary.segments.push_back(seg);
  }
  const auto& st = j.at("stats");
  summary.stats.n_candidates = st.at("n_candidates").get<int>();
  summary.stats.mean_candidate_dur_s = st.at("mean_candidate_dur_s").get<double>();
  summary.stats.n_selected = st.at("n_selected").get<int>();
  summary.stats.mean_selected_dur_s = st.at("mean_selected_dur_s").get<double>();
  summary.stats.duration_s = st.at("duration_s").get<double>();
  summary.stats.compression_rate = st.at("compression_rate").get<double>();
  summary.stats.generation_time_s = st.at("generation_time_s").get<double>();
  return summary;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingFile, path.string());
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  return j;
}

inline void write_summary(const Summary& summary, const std::filesystem::path& json_path) {
  write_text(json_path, to_json(summary).dump(2) + "\n");
}

inline void write_edl(const Summary& summary, const std::filesystem::path& csv_path) {
  std::string text;
  for (const SummarySegment& seg : summary.segments)
    text += std::to_string(seg.start_ms) + "," + std::to_string(seg.end_ms) + "\n";
  write_text(csv_path, text);
}

inline void write_lsus_jsonl(const std::vector<Lsu>& units, const std::filesystem::path& path) {
  std::string text;
  for (const Lsu& unit : units) {
    Json j;
    j["first_shot"] = unit.first_shot;
    j["last_shot"] = unit.last_shot;
    j["start_ms"] = unit.start_ms;
    j["end_ms"] = unit.end_ms;
    j["depth"] = unit.depth;
    text += j.dump() + "\n";
  }
  write_text(path, text);
}

inline void write_similarity_pairs(const SimilarityMatrix& matrix,
                                   const std::filesystem::path& path) {
  std::string text;
  for (const auto& [i, j] : matrix.pairs_in_range(0, matrix.size() - 1))
    text += std::to_string(i) + "," + std::to_string(j) + "\n";
  write_text(path, text);
}

inline void write_distance_csv(const DistanceMatrix& d, const std::filesystem::path& path) {
  std::string text;
  for (int t = 0; t < d.n; ++t) {
    for (int u = 0; u < d.n; ++u) {
      if (u) text += ',';
      text += format9(d.at(t, u));
    }
    text += '\n';
  }
  write_text(path, text);
}

inline void write_episodes_json(const std::vector<NarrativeEpisode>& episodes,
                                const std::filesystem::path& path) {
  auto arr = Json::array();
  for (const NarrativeEpisode& ep : episodes) {
    Json j;
    j["a"] = ep.a;
    j["b"] = ep.b;
    j["representative"] = ep.representative;
    arr.push_back(std::move(j));
  }
  write_text(path, arr.dump(2) + "\n");
}

// 8-bit binary PGM.
inline void write_pgm(const std::vector<std::uint8_t>& pixels, int width, int height,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << "P5\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

// Distance heatmap: 0 maps to white, sqrt(2) to black.
inline std::vector<std::uint8_t> heatmap_pixels(const DistanceMatrix& d) {
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(d.n) * d.n, 0);
  for (int t = 0; t < d.n; ++t)
    for (int u = 0; u < d.n; ++u) {
      const double v = std::clamp(d.at(t, u) / kSqrt2, 0.0, 1.0);
      pixels[static_cast<std::size_t>(t) * d.n + u] =
          static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - v)));
    }
  return pixels;
}

inline void write_heatmap(const DistanceMatrix& d, const std::filesystem::path& path) {
  write_pgm(heatmap_pixels(d), d.n, d.n, path);
}

// Heatmap with episode boxes (black outline) and a vertical line at each
// episode's representative scene.
inline void write_partition_heatmap(const DistanceMatrix& d,
                                    const std::vector<NarrativeEpisode>& episodes,
                                    const std::filesystem::path& path) {
  std::vector<std::uint8_t> pixels = heatmap_pixels(d);
  const auto put = [&](int row, int col) {
    if (row >= 0 && row < d.n && col >= 0 && col < d.n)
      pixels[static_cast<std::size_t>(row) * d.n + col] = 0;
  };
  for (const NarrativeEpisode& ep : episodes) {
    for (int k = ep.a; k <= ep.b; ++k) {
      put(ep.a, k);
      put(ep.b, k);
      put(k, ep.a);
      put(k, ep.b);
      put(k, ep.representative);
    }
  }
  write_pgm(pixels, d.n, d.n, path);
}

// FNV-1a over the corpus files, in fixed name order.
inline std::string corpus_hash(const std::filesystem::path& root) {
  static const char* kFiles[] = {"shots.csv",       "scenes.csv",          "turns.jsonl",
                                 "shot_histograms.jsonl", "shot_similarity.csv", "faces.jsonl",
                                 "chroma.jsonl"};
  std::uint64_t hash = 0xcbf29ce484222325ull;
  const auto mix = [&hash](const char* data, std::streamsize len) {
    for (std::streamsize i = 0; i < len; ++i) {
      hash ^= static_cast<unsigned char>(data[i]);
      hash *= 0x100000001b3ull;
    }
  };
  for (const char* name : kFiles) {
    const auto path = root / name;
    if (!std::filesystem::exists(path)) continue;
    mix(name, static_cast<std::streamsize>(std::string(name).size()));
    std::ifstream in(path, std::ios::binary);
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) mix(buf, in.gcount());
  }
  char out[32];
  std::snprintf(out, sizeof(out), "fnv1a:%016llx", static_cast<unsigned long long>(hash));
  return std::string(out);
}

}  // namespace storycut
