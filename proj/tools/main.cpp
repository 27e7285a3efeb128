#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lexrank/centrality.hpp"
#include "lexrank/corpus.hpp"
#include "lexrank/eval.hpp"
#include "lexrank/io.hpp"
#include "lexrank/simgraph.hpp"
#include "lexrank/summarizer.hpp"

namespace fs = std::filesystem;
using namespace lexrank;

namespace {

fs::path fixtures_dir() {
  if (const char* env = std::getenv("LEXRANK_FIXTURES")) return fs::path(env);
  return fs::path("fixtures");
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (directories ? !entry.is_directory() : !entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return out;
}

struct PolicyOverrides {
  std::optional<double> threshold;
  std::optional<double> damping;
  std::optional<double> epsilon;
  std::optional<int> byte_limit;
  std::optional<int> length_cutoff;

  void apply(Policy& policy) const {
    if (byte_limit) policy.byte_limit = *byte_limit;
    if (length_cutoff) policy.length_cutoff = *length_cutoff;
    for (FeatureSpec& spec : policy.features) {
      if (spec.name == "Position") continue;
      if (threshold && (spec.name == "Degree" || spec.name == "LexRank")) {
        spec.params.threshold = *threshold;
      }
      if (damping) spec.params.damping = *damping;
      if (epsilon) spec.params.epsilon = *epsilon;
    }
  }
};

void add_override_flags(CLI::App* cmd, PolicyOverrides& o) {
  cmd->add_option("--threshold", o.threshold, "Cosine threshold for Degree/LexRank features")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--damping", o.damping, "Jump probability d in (0, 1); default 0.15")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--epsilon", o.epsilon, "Power-method tolerance; default 1e-10");
  cmd->add_option("--byte-limit", o.byte_limit, "Summary byte budget; default 665");
  cmd->add_option("--length-cutoff", o.length_cutoff,
                  "Discard sentences with fewer tokens; default 9");
}

int cmd_idf_build(const fs::path& corpus_dir, const fs::path& out_path) {
  std::vector<std::vector<std::string>> docs;
  std::error_code ec;
  if (!fs::is_directory(corpus_dir, ec)) {
    throw std::runtime_error("cannot read corpus directory: " + corpus_dir.string());
  }
  // Accepts either a directory of documents or a directory of cluster
  // subdirectories; every regular file below counts as one document.
  for (const auto& entry : fs::recursive_directory_iterator(corpus_dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    docs.push_back(tokenize(read_file(entry.path())));
  }
  if (docs.empty()) throw std::runtime_error("no documents in: " + corpus_dir.string());

  IdfTable table = build_idf(docs);
  save_idf(table, out_path);
  std::cout << "documents: " << table.doc_count() << "\n"
            << "vocabulary: " << table.values().size() << "\n"
            << "wrote " << out_path.string() << "\n";
  return 0;
}

int cmd_summarize(const fs::path& cluster_dir, const std::string& idf_path,
                  const fs::path& policy_path, const std::string& matrix_path,
                  const std::string& out_path, const std::string& trace_path,
                  const PolicyOverrides& overrides) {
  Cluster cluster = load_cluster(cluster_dir);
  IdfTable idf = idf_path.empty() ? build_idf(cluster) : load_idf(idf_path);
  Policy policy = load_policy(policy_path);
  overrides.apply(policy);

  std::optional<SimilarityMatrix> matrix;
  if (!matrix_path.empty()) matrix = load_matrix(matrix_path);

  SummarizeTrace trace;
  Summary summary = summarize(cluster, idf, policy, matrix ? &*matrix : nullptr,
                              trace_path.empty() ? nullptr : &trace);
  for (const std::string& name : trace.degenerate_features) {
    std::cerr << "warning: feature " << name << " is constant across candidates\n";
  }

  if (!trace_path.empty()) save_trace(trace, trace_path);
  if (out_path.empty()) {
    std::cout << summary.text << "\n";
  } else {
    // The file holds exactly the summary bytes so its size honors the limit.
    write_file_atomic(out_path, summary.text);
    std::cout << "wrote " << out_path << " (" << summary.byte_length() << " bytes, "
              << summary.sentences.size() << " sentences)\n";
  }
  return 0;
}

int cmd_score(const fs::path& candidate_path, const fs::path& refs_dir, int n, int byte_limit,
              const std::string& out_path) {
  std::string text = read_file(candidate_path);
  if (byte_limit > 0 && text.size() > static_cast<std::size_t>(byte_limit)) {
    text.resize(static_cast<std::size_t>(byte_limit));
  }
  ReferenceSet references;
  std::vector<std::string> names;
  for (const fs::path& file : sorted_entries(refs_dir, false)) {
    references.push_back(tokenize(read_file(file)));
    names.push_back(file.filename().string());
  }
  if (references.empty()) throw std::runtime_error("no references in: " + refs_dir.string());

  RougeResult result = rouge_n(tokenize(text), references, n);
  std::string report;
  char buf[128];
  for (std::size_t i = 0; i < result.per_reference.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s\t%.6f\n", names[i].c_str(), result.per_reference[i]);
    report += buf;
  }
  std::snprintf(buf, sizeof(buf), "mean\t%.6f\n", result.recall);
  report += buf;
  std::cout << report;
  if (!out_path.empty()) write_file_atomic(out_path, report);
  return 0;
}

int cmd_experiment(const fs::path& corpus_root, const fs::path& refs_root,
                   const std::string& policy_path, const std::string& idf_path,
                   const fs::path& out_dir, bool noise, std::uint64_t seed,
                   const PolicyOverrides& overrides) {
  std::vector<Cluster> clusters;
  for (const fs::path& dir : sorted_entries(corpus_root, true)) {
    clusters.push_back(load_cluster(dir));
  }
  if (clusters.empty()) throw std::runtime_error("no clusters in: " + corpus_root.string());

  std::vector<ReferenceSet> references;
  for (const Cluster& cluster : clusters) {
    fs::path dir = refs_root / cluster.cluster_id;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      throw std::runtime_error("mismatched cluster/reference ids: no references for " +
                               cluster.cluster_id);
    }
    ReferenceSet refs;
    for (const fs::path& file : sorted_entries(dir, false)) {
      refs.push_back(tokenize(read_file(file)));
    }
    if (refs.empty()) {
      throw std::runtime_error("missing references for cluster " + cluster.cluster_id);
    }
    references.push_back(std::move(refs));
  }

  if (noise) {
    clusters = inject_noise(clusters, 2, seed);
    for (const Cluster& cluster : clusters) {
      std::cout << "cluster " << cluster.cluster_id << ": " << cluster.documents.size()
                << " documents after noise injection\n";
    }
  }

  ExperimentConfig config;
  if (!policy_path.empty()) config.base = load_policy(fs::path(policy_path));
  overrides.apply(config.base);
  config.cell_params.damping = overrides.damping;
  config.cell_params.epsilon = overrides.epsilon;
  config.seed = seed;

  IdfTable idf = idf_path.empty() ? build_idf(clusters) : load_idf(idf_path);
  ExperimentReport report = run_experiment(clusters, references, config, idf);

  write_file_atomic(out_dir / "grid.tsv", format_grid_tsv(report));
  write_file_atomic(out_dir / "aggregate.tsv", format_aggregate_tsv(report));
  std::cout << format_aggregate_tsv(report);
  std::cout << "wrote " << (out_dir / "grid.tsv").string() << "\n"
            << "wrote " << (out_dir / "aggregate.tsv").string() << "\n";
  return 0;
}

// Golden degree counts for the bundled reference matrix, self-loops included.
const std::vector<double> kVerifyThresholds = {0.1, 0.2, 0.3};
const std::vector<std::vector<int>> kExpectedDegrees = {
    {5, 7, 2, 6, 5, 7, 2, 9, 5, 6, 5},
    {4, 4, 1, 3, 2, 5, 2, 6, 4, 4, 2},
    {2, 2, 1, 1, 1, 1, 1, 1, 2, 1, 2},
};
const std::string kMostCentral = "d4s1";

int cmd_verify_fixtures() {
  const fs::path dir = fixtures_dir();
  const fs::path matrix_path = dir / "afp_iraq_matrix.tsv";
  const fs::path cluster_path = dir / "afp_iraq";
  int failures = 0;
  auto report = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok" : "FAIL") << ": " << what << "\n";
    if (!ok) ++failures;
  };

  SimilarityMatrix sim = load_matrix(matrix_path);
  report(sim.size() == 11, "reference matrix is 11x11");
  report(sim.sentence_ids.size() == 11, "reference matrix carries sentence ids");

  Cluster cluster = load_cluster(cluster_path);
  std::vector<std::string> cluster_ids;
  for (const SentenceRef& ref : flatten(cluster)) cluster_ids.push_back(ref.sentence->id());
  report(cluster.documents.size() == 5 && cluster_ids.size() == 11,
         "reference cluster has 5 documents and 11 sentences");
  report(cluster_ids == sim.sentence_ids, "cluster sentence ids match the matrix header");

  for (std::size_t t = 0; t < kVerifyThresholds.size(); ++t) {
    const double threshold = kVerifyThresholds[t];
    CentralityVector degrees = degree_centrality(threshold_adjacency(sim, threshold));
    bool ok = true;
    for (std::size_t i = 0; i < degrees.scores.size() && ok; ++i) {
      if (static_cast<int>(degrees.scores[i]) != kExpectedDegrees[t][i]) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "degree mismatch at %s (threshold %.1f): got %d, want %d",
                      sim.sentence_ids[i].c_str(), threshold,
                      static_cast<int>(degrees.scores[i]), kExpectedDegrees[t][i]);
        report(false, buf);
        ok = false;
      }
    }
    if (ok) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "degree counts at threshold %.1f", threshold);
      report(true, buf);
    }
  }

  for (double damping : {0.05, 0.15, 0.5}) {
    CentralityVector scores = lexrank::lexrank(sim, 0.3, damping);
    double worst = 0.0;
    for (double s : scores.scores) worst = std::max(worst, std::abs(s - 1.0 / 11.0));
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "uniform stationary distribution at threshold 0.3, damping %.2f "
                  "(max deviation %.2e)", damping, worst);
    report(worst <= 1e-6, buf);
    CentralityVector normalized = normalize_max(scores);
    bool all_one = std::all_of(normalized.scores.begin(), normalized.scores.end(),
                               [](double s) { return std::abs(s - 1.0) < 5e-5; });
    std::snprintf(buf, sizeof(buf),
                  "max-normalized column is all 1.0000 at threshold 0.3, damping %.2f", damping);
    report(all_one, buf);
  }

  for (double threshold : {0.1, 0.2}) {
    CentralityVector scores = lexrank::lexrank(sim, threshold, 0.15);
    auto arg = std::distance(scores.scores.begin(),
                             std::max_element(scores.scores.begin(), scores.scores.end()));
    char buf[128];
    std::snprintf(buf, sizeof(buf), "most central sentence by LexRank at threshold %.1f is %s",
                  threshold, kMostCentral.c_str());
    report(sim.sentence_ids[arg] == kMostCentral, buf);

    CentralityVector degrees = degree_centrality(threshold_adjacency(sim, threshold));
    arg = std::distance(degrees.scores.begin(),
                        std::max_element(degrees.scores.begin(), degrees.scores.end()));
    std::snprintf(buf, sizeof(buf), "most central sentence by degree at threshold %.1f is %s",
                  threshold, kMostCentral.c_str());
    report(sim.sentence_ids[arg] == kMostCentral, buf);
  }

  if (failures == 0) {
    std::cout << "all fixture checks passed\n";
    return 0;
  }
  std::cout << failures << " fixture check(s) failed\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based extractive multi-document summarizer"};
  app.require_subcommand(1);

  auto* idf_cmd = app.add_subcommand("idf-build", "Build an idf database from a corpus");
  std::string idf_corpus, idf_out;
  idf_cmd->add_option("corpus_dir", idf_corpus, "Directory of documents (or cluster directories)")
      ->required();
  idf_cmd->add_option("-o,--output", idf_out, "Output idf database path")->required();

  auto* sum_cmd = app.add_subcommand("summarize", "Summarize one cluster");
  std::string sum_cluster, sum_idf, sum_policy, sum_matrix, sum_out, sum_trace;
  PolicyOverrides sum_over;
  sum_cmd->add_option("cluster_dir", sum_cluster, "Cluster directory, one sentence per line")
      ->required();
  sum_cmd->add_option("--policy", sum_policy, "Policy file")->required();
  sum_cmd->add_option("--idf", sum_idf, "idf database (default: built from the cluster)");
  sum_cmd->add_option("--matrix", sum_matrix,
                      "Precomputed similarity matrix covering the cluster");
  sum_cmd->add_option("-o,--output", sum_out, "Write the summary here instead of stdout");
  sum_cmd->add_option("--trace", sum_trace, "Write a per-sentence feature/score TSV");
  add_override_flags(sum_cmd, sum_over);

  auto* score_cmd = app.add_subcommand("score", "ROUGE-N recall of a summary against references");
  std::string score_cand, score_refs, score_out;
  int score_n = 1, score_limit = kDefaultByteLimit;
  score_cmd->add_option("--candidate", score_cand, "Candidate summary file")->required();
  score_cmd->add_option("--references", score_refs, "Directory of reference summaries")
      ->required();
  score_cmd->add_option("-n", score_n, "n-gram order; default 1");
  score_cmd->add_option("--byte-limit", score_limit,
                        "Truncate the candidate first; default 665, 0 disables");
  score_cmd->add_option("-o,--output", score_out, "Also write the report here");

  auto* exp_cmd = app.add_subcommand("experiment", "Threshold/weight sweep with baselines");
  std::string exp_corpus, exp_refs, exp_policy, exp_idf, exp_out = "report";
  bool exp_noise = false;
  std::uint64_t exp_seed = 0;
  PolicyOverrides exp_over;
  exp_cmd->add_option("corpus_root", exp_corpus, "Directory of cluster directories")->required();
  exp_cmd->add_option("refs_root", exp_refs, "Directory of per-cluster reference directories")
      ->required();
  exp_cmd->add_option("--policy", exp_policy, "Base policy (cutoff, reranker, byte limit)");
  exp_cmd->add_option("--idf", exp_idf, "idf database (default: built from the corpus)");
  exp_cmd->add_option("-o,--output", exp_out, "Report directory; default ./report");
  exp_cmd->add_flag("--noise", exp_noise, "Inject 2 foreign documents into each cluster first");
  exp_cmd->add_option("--seed", exp_seed, "Seed for noise injection and the random baseline");
  add_override_flags(exp_cmd, exp_over);

  auto* verify_cmd = app.add_subcommand(
      "verify-fixtures", "Check the bundled reference cluster against its known centralities");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*idf_cmd) return cmd_idf_build(idf_corpus, idf_out);
    if (*sum_cmd) {
      return cmd_summarize(sum_cluster, sum_idf, sum_policy, sum_matrix, sum_out, sum_trace,
                           sum_over);
    }
    if (*score_cmd) return cmd_score(score_cand, score_refs, score_n, score_limit, score_out);
    if (*exp_cmd) {
      return cmd_experiment(exp_corpus, exp_refs, exp_policy, exp_idf, exp_out, exp_noise,
                            exp_seed, exp_over);
    }
    if (*verify_cmd) return cmd_verify_fixtures();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
