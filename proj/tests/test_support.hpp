#pragma once
// Shared test helpers: scratch directories and small hand-built corpora.

#include <filesystem>
#include <fstream>
#include <string>

#include "storycut/corpus.hpp"

namespace storycut::testing {

// Unique scratch directory, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static int counter = 0;
    dir_ = std::filesystem::temp_directory_path() /
           ("storycut_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(dir_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  const std::filesystem::path& path() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

// 5 shots, 1 scene, 3 turns; the smallest corpus the loader accepts.
inline void write_minimal_corpus(const std::filesystem::path& dir) {
  write_file(dir / "shots.csv",
             "0,0,2000\n"
             "1,2000,4000\n"
             "2,4000,6000\n"
             "3,6000,8000\n"
             "4,8000,10000\n");
  write_file(dir / "scenes.csv", "0,1,1,0,10000\n");
  write_file(dir / "turns.jsonl",
             "{\"start_ms\":100,\"end_ms\":1500,\"speaker\":\"Arya\",\"scene_id\":null}\n"
             "{\"start_ms\":1600,\"end_ms\":3000,\"speaker\":\"Gendry\",\"scene_id\":0}\n"
             "{\"start_ms\":3100,\"end_ms\":4400,\"speaker\":\"Arya\",\"scene_id\":null}\n");
}

// In-memory corpus: one scene per entry of `scene_turns`, scenes of the given
// length, turns described as (start_ms, end_ms, speaker) on the global
// timeline.
struct TurnSpec {
  std::int64_t start_ms;
  std::int64_t end_ms;
  std::string speaker;
};

inline Corpus make_turn_corpus(int n_scenes, std::int64_t scene_len_ms,
                               const std::vector<TurnSpec>& turns) {
  Corpus corpus;
  corpus.shots.push_back({0, 0, n_scenes * scene_len_ms});
  for (int s = 0; s < n_scenes; ++s)
    corpus.scenes.push_back({s, 1, 1, s * scene_len_ms, (s + 1) * scene_len_ms});
  for (const TurnSpec& t : turns) corpus.turns.push_back({t.start_ms, t.end_ms, t.speaker, {}, -1});
  corpus.finalize();
  return corpus;
}

}  // namespace storycut::testing
