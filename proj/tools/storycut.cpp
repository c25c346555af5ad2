// storycut: character-oriented summarization of annotated TV-series corpora.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "storycut/corpus.hpp"
#include "storycut/io.hpp"
#include "storycut/lsu.hpp"
#include "storycut/network.hpp"
#include "storycut/oracles.hpp"
#include "storycut/relevance.hpp"
#include "storycut/segmentation.hpp"
#include "storycut/selection.hpp"
#include "storycut/shots.hpp"
#include "storycut/summarize.hpp"
#include "storycut/util.hpp"

namespace fs = std::filesystem;
using namespace storycut;

namespace {

struct CliOptions {
  std::string corpus;
  std::string character;
  std::string out;
  std::string heatmap;
  std::string kind = "all";
  Params params;
  std::vector<double> lambda = {0.16, 0.42, 0.42};
  double eta = 0.0;  // 0 means default (mean positive energy)
  int oracle_n = 12;
  int oracle_trials = 100;
  std::vector<std::string> summary_files;
};

void add_param_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--theta", opt.params.theta, "Shot-similarity threshold")
      ->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--tau", opt.params.tau, "Episode granularity threshold");
  cmd->add_option("--budget", opt.params.budget_s, "Per-episode summary budget in seconds");
  cmd->add_option("--min", opt.params.min_lsu_s, "Minimum candidate duration in seconds");
  cmd->add_option("--max", opt.params.max_lsu_s, "Maximum candidate duration in seconds");
  cmd->add_option("--sigma", opt.params.smoothing.sigma, "Relationship smoothing decay, in scenes");
  cmd->add_option("--eta", opt.eta, "Relationship saturation (default: mean positive energy)");
  cmd->add_option("--seed", opt.params.seed, "Seed for the baseline summary sampler");
  cmd->add_option("--lambda", opt.lambda,
                  "Feature weights: social relevance, shot size, musicality")
      ->expected(3)
      ->delimiter(',');
}

void resolve_params(CliOptions& opt) {
  opt.params.weights = {opt.lambda[0], opt.lambda[1], opt.lambda[2]};
  if (opt.eta > 0.0) opt.params.smoothing.eta = opt.eta;
}

Json params_json(const CliOptions& opt, const std::string& command) {
  Json j;
  j["command"] = command;
  j["corpus"] = opt.corpus;
  if (!opt.corpus.empty()) j["corpus_hash"] = corpus_hash(opt.corpus);
  if (!opt.character.empty()) j["character"] = opt.character;
  j["tau"] = round9(opt.params.tau);
  j["budget_s"] = round9(opt.params.budget_s);
  j["lambda"] = {round9(opt.params.weights.social), round9(opt.params.weights.shot_size),
                 round9(opt.params.weights.musicality)};
  j["theta"] = round9(opt.params.theta);
  j["min_lsu_s"] = round9(opt.params.min_lsu_s);
  j["max_lsu_s"] = round9(opt.params.max_lsu_s);
  j["sigma"] = round9(opt.params.smoothing.sigma);
  if (opt.params.smoothing.eta)
    j["eta"] = round9(*opt.params.smoothing.eta);
  else
    j["eta"] = nullptr;
  j["seed"] = opt.params.seed;
  j["out"] = opt.out;
  return j;
}

// run.json lands in the output directory (or next to the output file).
void write_run_record(const CliOptions& opt, const std::string& command) {
  fs::path dir = opt.out.empty() ? fs::path(".") : fs::path(opt.out);
  if (dir.has_extension()) dir = dir.parent_path();
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  write_text(dir / "run.json", params_json(opt, command).dump(2) + "\n");
}

int cmd_validate(CliOptions& opt) {
  const Corpus corpus = load_corpus(opt.corpus);
  Json j;
  j["ok"] = true;
  j["n_shots"] = corpus.n_shots();
  j["n_scenes"] = corpus.n_scenes();
  j["n_turns"] = corpus.n_turns();
  j["n_characters"] = corpus.characters.size();
  j["n_chroma_frames"] = corpus.chroma.size();
  j["has_histograms"] = !corpus.shot_histograms.empty();
  j["has_similarity_pairs"] = corpus.similarity_pairs.has_value();
  std::printf("%s\n", j.dump(2).c_str());
  write_run_record(opt, "validate");
  return 0;
}

int cmd_sim(CliOptions& opt) {
  const Corpus corpus = load_corpus(opt.corpus);
  const SimilarityMatrix matrix = shot_similarity(corpus, opt.params.theta);
  const fs::path out = opt.out.empty() ? fs::path("shot_similarity.csv") : fs::path(opt.out);
  write_similarity_pairs(matrix, out);
  write_run_record(opt, "sim");
  std::printf("wrote %s (%d shots)\n", out.string().c_str(), matrix.size());
  return 0;
}

int cmd_lsu(CliOptions& opt) {
  const Corpus corpus = load_corpus(opt.corpus);
  const std::vector<Lsu> units = make_candidates(corpus, opt.params);
  const fs::path out = opt.out.empty() ? fs::path("lsus.jsonl") : fs::path(opt.out);
  write_lsus_jsonl(units, out);
  write_run_record(opt, "lsu");
  std::printf("wrote %s (%zu candidate units)\n", out.string().c_str(), units.size());
  return 0;
}

int cmd_network(CliOptions& opt) {
  const Corpus corpus = load_corpus(opt.corpus);
  const CharacterNetwork net = smooth_relationships(corpus, opt.character, opt.params.smoothing);
  const DistanceMatrix dist = distance_matrix(net);
  const fs::path out = opt.out.empty() ? fs::path("dist.csv") : fs::path(opt.out);
  write_distance_csv(dist, out);
  if (!opt.heatmap.empty()) write_heatmap(dist, opt.heatmap);
  write_run_record(opt, "network");
  std::printf("wrote %s (%d storyline scenes, eta=%s)\n", out.string().c_str(), dist.n,
              format9(net.eta_used).c_str());
  return 0;
}

int cmd_segment(CliOptions& opt) {
  const Corpus corpus = load_corpus(opt.corpus);
  const CharacterNetwork net = smooth_relationships(corpus, opt.character, opt.params.smoothing);
  const DistanceMatrix dist = distance_matrix(net);
  const std::vector<NarrativeEpisode> episodes = segment_storyline(dist, opt.params.tau);
  const fs::path out = opt.out.empty() ? fs::path("episodes.json") : fs::path(opt.out);
  write_episodes_json(episodes, out);
  if (!opt.heatmap.empty()) write_partition_heatmap(dist, episodes, opt.heatmap);
  write_run_record(opt, "segment");
  std::printf("wrote %s (%zu narrative episodes)\n", out.string().c_str(), episodes.size());
  return 0;
}

int cmd_score(CliOptions& opt) {
  const Corpus corpus = load_corpus(opt.corpus);
  opt.params.weights.validate();
  const std::vector<Lsu> units = make_candidates(corpus, opt.params);
  const std::vector<double> sizes = shot_sizes(corpus);

  // Global pool (soliloquies included); social relevance attached where the
  // storyline provides it.
  std::vector<Candidate> pool =
      detail::build_pool(corpus, units, opt.character, nullptr, kStyleWeights, sizes);
  std::optional<CharacterAnalysis> analysis;
  if (opt.params.weights.social > 0.0)
    analysis = analyze_character(corpus, opt.character, opt.params);
  // map each pool entry back to its index in the chronological unit list
  std::size_t cursor = 0;
  std::string text = "lsu_id,sr,ss,m_raw,m,p\n";
  for (const Candidate& cand : pool) {
    while (cursor < units.size() &&
           !(units[cursor].first_shot == cand.lsu.first_shot &&
             units[cursor].last_shot == cand.lsu.last_shot &&
             units[cursor].depth == cand.lsu.depth))
      ++cursor;
    std::optional<double> sr;
    if (analysis) {
      const double mid = 0.5 * static_cast<double>(cand.lsu.start_ms + cand.lsu.end_ms);
      const auto scene = corpus.scene_containing(mid);
      std::optional<int> pos;
      if (scene) pos = analysis->net.storyline_index(*scene);
      if (pos) {
        const NarrativeEpisode& ep = analysis->episodes[locate_episode(analysis->episodes, *pos)];
        sr = social_relevance(cand.interactions, analysis->net.vectors[ep.representative].weights);
      }
    }
    text += std::to_string(cursor) + ",";
    if (sr) text += format9(*sr);
    text += "," + format9(cand.ss) + "," + format9(cand.m_raw) + "," + format9(cand.m) + ",";
    if (opt.params.weights.social > 0.0 && !sr)
      ;  // relevance undefined for soliloquies under a positive social weight
    else
      text += format9(combined_relevance(sr, cand.ss, cand.m, opt.params.weights));
    text += "\n";
  }
  const fs::path out = opt.out.empty() ? fs::path("scores.csv") : fs::path(opt.out);
  write_text(out, text);
  write_run_record(opt, "score");
  std::printf("wrote %s (%zu candidates)\n", out.string().c_str(), pool.size());
  return 0;
}

int cmd_summarize(CliOptions& opt) {
  const Corpus corpus = load_corpus(opt.corpus);
  opt.params.weights.validate();
  const std::vector<Lsu> units = make_candidates(corpus, opt.params);
  const fs::path dir = opt.out.empty() ? fs::path(".") : fs::path(opt.out);

  const auto emit = [&](const Summary& summary) {
    write_summary(summary, dir / ("summary_" + summary.kind + ".json"));
    write_edl(summary, dir / ("summary_" + summary.kind + ".edl.csv"));
    std::printf("%s: %d segments, %.1f s\n", summary.kind.c_str(), summary.stats.n_selected,
                summary.stats.duration_s);
  };

  const bool all = opt.kind == "all";
  std::optional<Summary> full;
  if (all || opt.kind == "full" || opt.kind == "sty" || opt.kind == "bsl")
    full = build_full_summary(corpus, opt.character, opt.params, units);
  if (all || opt.kind == "full") emit(*full);
  if (all || opt.kind == "sty")
    emit(build_style_summary(corpus, opt.character, opt.params, full->stats.duration_s, units));
  if (all || opt.kind == "bsl")
    emit(build_baseline_summary(corpus, opt.character, opt.params, full->stats.duration_s,
                                opt.params.seed, units));
  write_run_record(opt, "summarize");
  return 0;
}

int cmd_stats(CliOptions& opt) {
  std::vector<Summary> summaries;
  for (const std::string& file : opt.summary_files)
    summaries.push_back(summary_from_json(read_json_file(file)));
  Json j;
  auto list = Json::array();
  for (const Summary& s : summaries) {
    Json item;
    item["kind"] = s.kind;
    item["character"] = s.character;
    item["stats"] = to_json(s.stats);
    list.push_back(std::move(item));
  }
  j["summaries"] = std::move(list);
  Json overlaps;
  for (std::size_t i = 0; i < summaries.size(); ++i)
    for (std::size_t k = i + 1; k < summaries.size(); ++k) {
      const std::string key = summaries[i].kind + "/" + summaries[k].kind;
      overlaps[key] = round9(pairwise_overlap(summaries[i], summaries[k]));
    }
  j["overlap_pct"] = std::move(overlaps);
  const std::string text = j.dump(2) + "\n";
  if (!opt.out.empty()) write_text(opt.out, text);
  std::printf("%s", text.c_str());
  return 0;
}

int cmd_oracle_check(CliOptions& opt) {
  SplitMix64 rng(opt.params.seed);
  const double taus[] = {0.4, 0.8, 1.0, 1.2};

  int violations = 0;
  int greedy_optimal = 0;
  double max_gap = 0.0, gap_sum = 0.0;
  int dp_mismatches = 0;

  for (int trial = 0; trial < opt.oracle_trials; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(static_cast<std::size_t>(opt.oracle_n - 1)));
    const SelectionProblem problem = oracles::random_selection_problem(n, rng);
    double total_w = 0.0;
    for (const double w : problem.duration) total_w += w;
    const double budget = rng.next_range(0.0, total_w);

    const GreedyResult greedy = greedy_select(problem, budget);
    double used = 0.0;
    for (const int i : greedy.selected) used += problem.duration[i];
    if (used > budget + 1e-12) ++violations;
    for (std::size_t x = 0; x < greedy.selected.size(); ++x)
      for (std::size_t y = x + 1; y < greedy.selected.size(); ++y)
        if (problem.overlaps(greedy.selected[x], greedy.selected[y])) ++violations;
    const double direct = objective_value(problem, greedy.selected);
    if (std::abs(direct - greedy.objective) > 1e-9) ++violations;

    const ExactResult exact = exact_select(problem, budget);
    const double gap = exact.objective - direct;
    if (gap < -1e-9) ++violations;
    const double rel = exact.objective > 0.0 ? std::max(gap, 0.0) / exact.objective : 0.0;
    gap_sum += rel;
    max_gap = std::max(max_gap, rel);
    if (rel <= 1e-12) ++greedy_optimal;

    const int m = 2 + static_cast<int>(
                          rng.next_below(static_cast<std::size_t>(std::min(opt.oracle_n, 12) - 1)));
    const DistanceMatrix dist = oracles::random_distances(m, rng);
    const double tau = taus[trial % 4];
    CoverCost dp_cost;
    min_overlap_cover(dist, tau, &dp_cost);
    const CoverCost direct_cost = oracles::min_cover_cost_direct(dist, tau);
    if (!(dp_cost == direct_cost)) ++dp_mismatches;
  }

  Json j;
  j["trials"] = opt.oracle_trials;
  j["max_n"] = opt.oracle_n;
  j["seed"] = opt.params.seed;
  j["greedy"] = {{"constraint_violations", violations},
                 {"optimal_fraction", round9(static_cast<double>(greedy_optimal) /
                                             std::max(1, opt.oracle_trials))},
                 {"mean_relative_gap", round9(gap_sum / std::max(1, opt.oracle_trials))},
                 {"max_relative_gap", round9(max_gap)}};
  j["segmentation"] = {{"dp_mismatches", dp_mismatches}};
  const std::string text = j.dump(2) + "\n";
  if (!opt.out.empty()) write_text(opt.out, text);
  std::printf("%s", text.c_str());
  return (violations == 0 && dp_mismatches == 0) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character-oriented extractive summarization of TV-series corpora"};
  app.require_subcommand(1);
  CliOptions opt;

  const auto with_corpus = [&](CLI::App* cmd, bool need_character) {
    cmd->add_option("--corpus", opt.corpus, "Corpus directory")->required();
    if (need_character)
      cmd->add_option("--character", opt.character, "Character name (exact, case-sensitive)")
          ->required();
    add_param_flags(cmd, opt);
    return cmd;
  };

  auto* validate = with_corpus(app.add_subcommand("validate", "Load and validate a corpus"), false);
  validate->add_option("--out", opt.out, "Directory for run.json");

  auto* sim = with_corpus(
      app.add_subcommand("sim", "Compute the binary shot-similarity pair list"), false);
  sim->add_option("--out", opt.out, "Output CSV path");

  auto* lsu = with_corpus(app.add_subcommand("lsu", "Detect candidate story units"), false);
  lsu->add_option("--out", opt.out, "Output JSONL path");

  auto* network =
      with_corpus(app.add_subcommand("network", "Relationship distance matrix"), true);
  network->add_option("--out", opt.out, "Output CSV path");
  network->add_option("--heatmap", opt.heatmap, "Optional PGM heatmap path");

  auto* segment =
      with_corpus(app.add_subcommand("segment", "Narrative episode partition"), true);
  segment->add_option("--out", opt.out, "Output JSON path");
  segment->add_option("--heatmap", opt.heatmap, "Optional PGM heatmap with episode boxes");

  auto* score = with_corpus(app.add_subcommand("score", "Score candidate story units"), true);
  score->add_option("--out", opt.out, "Output CSV path");

  auto* summarize = with_corpus(app.add_subcommand("summarize", "Build summaries"), true);
  summarize->add_option("--kind", opt.kind, "full, sty, bsl, or all")
      ->check(CLI::IsMember({"full", "sty", "bsl", "all"}));
  summarize->add_option("--out", opt.out, "Output directory");

  auto* stats = app.add_subcommand("stats", "Statistics and pairwise overlap of summaries");
  stats->add_option("files", opt.summary_files, "summary_*.json files")->required();
  stats->add_option("--out", opt.out, "Optional output JSON path");

  auto* oracle = app.add_subcommand("oracle-check", "Greedy-vs-exact and DP-vs-brute-force report");
  oracle->add_option("--n", opt.oracle_n, "Maximum instance size")->check(CLI::Range(2, 20));
  oracle->add_option("--trials", opt.oracle_trials, "Number of random instances")
      ->check(CLI::PositiveNumber);
  oracle->add_option("--seed", opt.params.seed, "Instance generator seed");
  oracle->add_option("--out", opt.out, "Optional output JSON path");

  CLI11_PARSE(app, argc, argv);
  resolve_params(opt);

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (sim->parsed()) return cmd_sim(opt);
    if (lsu->parsed()) return cmd_lsu(opt);
    if (network->parsed()) return cmd_network(opt);
    if (segment->parsed()) return cmd_segment(opt);
    if (score->parsed()) return cmd_score(opt);
    if (summarize->parsed()) return cmd_summarize(opt);
    if (stats->parsed()) return cmd_stats(opt);
    if (oracle->parsed()) return cmd_oracle_check(opt);
  } catch (const Error& e) {
    Json record;
    record["error"]["kind"] = to_string(e.kind());
    record["error"]["message"] = e.what();
    if (!e.subject().empty()) {
      record["error"]["subject"] = e.subject();
      record["error"]["id"] = e.id();
    }
    std::fprintf(stderr, "%s\n", record.dump().c_str());
    return is_validation_error(e.kind()) ? 2 : 3;
  } catch (const std::exception& e) {
    Json record;
    record["error"]["kind"] = "Internal";
    record["error"]["message"] = e.what();
    std::fprintf(stderr, "%s\n", record.dump().c_str());
    return 3;
  }
  return 0;
}
