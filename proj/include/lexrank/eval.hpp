#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexrank/corpus.hpp"
#include "lexrank/summarizer.hpp"

namespace lexrank {

// Tokenized reference summaries for one cluster.
using ReferenceSet = std::vector<std::vector<std::string>>;

struct RougeResult {
  int n = 1;
  double recall = 0.0;                 // arithmetic mean of per_reference
  std::vector<double> per_reference;
};

// Clipped n-gram recall against each reference, averaged. References shorter
// than n contribute no n-grams; if every reference is shorter than n this is
// an error.
RougeResult rouge_n(const std::vector<std::string>& candidate,
                    const ReferenceSet& references, int n);

inline constexpr int kRandomBaselineRuns = 5;

// Seeded uniform shuffle of the (length-filtered) sentences, assembled to the
// byte limit. Identical seeds give identical summaries.
Summary random_baseline(const Cluster& cluster, int byte_limit, std::uint64_t seed,
                        int length_cutoff = 0);

// The pipeline with the Position feature alone; cutoff and reranker settings
// come from the policy.
Summary lead_baseline(const Cluster& cluster, const IdfTable& idf, const Policy& policy);

// Copies each cluster and appends per_cluster documents drawn (seeded,
// without replacement per cluster) from the other clusters. Injected
// documents are re-identified as "<source_cluster>:<doc_id>".
std::vector<Cluster> inject_noise(const std::vector<Cluster>& clusters, int per_cluster,
                                  std::uint64_t seed);

struct ExperimentCell {
  std::string method;
  double threshold = 0.0;
  double weight = 0.0;
  double rouge1 = 0.0;  // averaged over clusters
};

struct ExperimentAggregate {
  std::string method;
  double threshold = 0.0;
  double min_score = 0.0;
  double max_score = 0.0;
  double avg_score = 0.0;
};

struct ExperimentReport {
  std::vector<ExperimentCell> cells;           // exhaustive method x threshold x weight grid
  std::vector<ExperimentAggregate> aggregates; // min/max/average over the weight sweep
  double random_median = 0.0;                  // median of kRandomBaselineRuns seeded runs
  double lead_score = 0.0;
};

struct ExperimentConfig {
  std::vector<CentralityMethod> methods = {
      CentralityMethod::Degree, CentralityMethod::LexRank, CentralityMethod::ContinuousLexRank};
  std::vector<double> thresholds = {0.1, 0.2, 0.3, 0.4};
  std::vector<double> weights = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 5.0, 10.0};
  Policy base;                  // cutoff, reranker and byte limit; features are ignored
  CentralityParams cell_params; // damping/epsilon for every grid cell; threshold comes
                                // from the sweep
  std::uint64_t seed = 0;       // random-baseline seed base
};

// Summarizes every cluster per grid cell (centrality feature at the given
// weight plus Position at weight 1), scores ROUGE-1 against the cluster's
// references and averages over clusters. Candidates are truncated to the
// byte limit before scoring.
ExperimentReport run_experiment(const std::vector<Cluster>& clusters,
                                const std::vector<ReferenceSet>& references,
                                const ExperimentConfig& config, const IdfTable& idf);

std::string format_grid_tsv(const ExperimentReport& report);
std::string format_aggregate_tsv(const ExperimentReport& report);

}  // namespace lexrank
