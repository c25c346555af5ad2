// Regenerates the bundled synthetic corpora under data/. Deterministic for a
// fixed seed.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "storycut/corpus.hpp"
#include "storycut/synthetic.hpp"

using namespace storycut;

int main(int argc, char** argv) {
  CLI::App app{"Synthetic corpus generator"};
  std::string out = "data/fixture";
  std::string kind = "demo";
  std::uint64_t seed = 20160424;
  app.add_option("--out", out, "Output directory");
  app.add_option("--kind", kind, "demo (pair-list corpus), mini (histogram corpus), bench (large)")
      ->check(CLI::IsMember({"demo", "mini", "bench"}));
  app.add_option("--seed", seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);

  SynthSpec spec;
  spec.seed = seed;
  if (kind == "demo") {
    spec.phases = 3;
    spec.scenes_per_phase = 30;
    spec.buffer_scenes = 25;
  } else if (kind == "mini") {
    spec.phases = 1;
    spec.scenes_per_phase = 3;
    spec.buffer_scenes = 0;
    spec.blocks_per_scene = 2;
    spec.with_histograms = true;
    spec.hist_bins = 16;
  } else {
    spec.phases = 10;
    spec.scenes_per_phase = 30;
    spec.buffer_scenes = 25;
    spec.scene_len_s = 100.0;
    spec.blocks_per_scene = 7;
    spec.extras_block_rate = 0.02;
    spec.soliloquy_rate = 0.05;
  }

  const Corpus corpus = synthesize_corpus(spec);
  save_corpus(corpus, out);
  std::printf("%s: %d shots, %d scenes, %d turns, %zu characters\n", out.c_str(),
              corpus.n_shots(), corpus.n_scenes(), corpus.n_turns(), corpus.characters.size());
  return 0;
}
