#include "lexrank/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace lexrank {

namespace {

std::map<std::string, int> ngram_counts(const std::vector<std::string>& tokens, int n) {
  std::map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key += ' ';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

RougeResult rouge_n(const std::vector<std::string>& candidate, const ReferenceSet& references,
                    int n) {
  if (n < 1) throw std::invalid_argument("n-gram order must be at least 1");
  if (references.empty()) throw std::invalid_argument("no references");

  const auto cand = ngram_counts(candidate, n);
  RougeResult result;
  result.n = n;
  for (const auto& reference : references) {
    const auto ref = ngram_counts(reference, n);
    int total = 0;
    int matched = 0;
    for (const auto& [gram, count] : ref) {
      total += count;
      auto it = cand.find(gram);
      if (it != cand.end()) matched += std::min(count, it->second);
    }
    if (total == 0) continue;  // reference shorter than n
    result.per_reference.push_back(static_cast<double>(matched) / total);
  }
  if (result.per_reference.empty()) {
    throw std::runtime_error("n-gram order " + std::to_string(n) +
                             " exceeds every reference length");
  }
  result.recall = std::accumulate(result.per_reference.begin(), result.per_reference.end(), 0.0) /
                  result.per_reference.size();
  return result;
}

namespace {

// Fisher-Yates with explicit draws so shuffles are reproducible across
// library implementations.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace

Summary random_baseline(const Cluster& cluster, int byte_limit, std::uint64_t seed,
                        int length_cutoff) {
  std::vector<SentenceRef> candidates = length_filter(flatten(cluster), length_cutoff);
  std::mt19937_64 rng(seed);
  seeded_shuffle(candidates, rng);
  return assemble_summary(candidates, byte_limit);
}

Summary lead_baseline(const Cluster& cluster, const IdfTable& idf, const Policy& policy) {
  Policy lead = policy;
  lead.features = {FeatureSpec{"Position", 1.0, {}, false}};
  return summarize(cluster, idf, lead);
}

std::vector<Cluster> inject_noise(const std::vector<Cluster>& clusters, int per_cluster,
                                  std::uint64_t seed) {
  if (clusters.size() < 2) throw std::invalid_argument("noise injection needs at least 2 clusters");
  if (per_cluster < 0) throw std::invalid_argument("negative per-cluster document count");

  std::mt19937_64 rng(seed);
  std::vector<Cluster> noisy = clusters;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    std::vector<std::pair<std::size_t, std::size_t>> pool;  // (cluster, document)
    for (std::size_t other = 0; other < clusters.size(); ++other) {
      if (other == c) continue;
      for (std::size_t d = 0; d < clusters[other].documents.size(); ++d) pool.emplace_back(other, d);
    }
    if (static_cast<std::size_t>(per_cluster) > pool.size()) {
      throw std::runtime_error("not enough foreign documents to inject into cluster " +
                               clusters[c].cluster_id);
    }
    seeded_shuffle(pool, rng);
    for (int k = 0; k < per_cluster; ++k) {
      const auto [src, d] = pool[k];
      Document doc = clusters[src].documents[d];
      const std::string new_id = clusters[src].cluster_id + ":" + doc.doc_id;
      doc.doc_id = new_id;
      for (Sentence& s : doc.sentences) s.doc_id = new_id;
      noisy[c].documents.push_back(std::move(doc));
    }
  }
  return noisy;
}

namespace {

double mean_rouge1(const std::vector<Cluster>& clusters,
                   const std::vector<ReferenceSet>& references, int byte_limit,
                   const std::function<Summary(const Cluster&)>& summarize_one) {
  double sum = 0.0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    Summary summary = summarize_one(clusters[c]);
    std::string text = summary.text.substr(0, static_cast<std::size_t>(byte_limit));
    sum += rouge_n(tokenize(text), references[c], 1).recall;
  }
  return sum / clusters.size();
}

}  // namespace

ExperimentReport run_experiment(const std::vector<Cluster>& clusters,
                                const std::vector<ReferenceSet>& references,
                                const ExperimentConfig& config, const IdfTable& idf) {
  if (clusters.empty()) throw std::invalid_argument("no clusters");
  if (references.size() != clusters.size()) {
    throw std::invalid_argument("expected one reference set per cluster");
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (references[c].empty()) {
      throw std::runtime_error("missing references for cluster " + clusters[c].cluster_id);
    }
  }

  ExperimentReport report;
  for (CentralityMethod method : config.methods) {
    for (double threshold : config.thresholds) {
      double cell_min = 0.0, cell_max = 0.0, cell_sum = 0.0;
      bool first = true;
      for (double weight : config.weights) {
        Policy policy = config.base;
        FeatureSpec centrality{to_string(method), weight, config.cell_params, false};
        // The sweep threshold is the cosine threshold; Centroid's threshold is
        // a tf*idf cutoff on another scale, so it keeps its default there.
        if (method != CentralityMethod::Centroid) centrality.params.threshold = threshold;
        policy.features = {centrality, FeatureSpec{"Position", 1.0, {}, false}};

        double score = mean_rouge1(clusters, references, policy.byte_limit,
                                   [&](const Cluster& cl) { return summarize(cl, idf, policy); });
        report.cells.push_back({to_string(method), threshold, weight, score});
        cell_min = first ? score : std::min(cell_min, score);
        cell_max = first ? score : std::max(cell_max, score);
        cell_sum += score;
        first = false;
      }
      report.aggregates.push_back({to_string(method), threshold, cell_min, cell_max,
                                   cell_sum / config.weights.size()});
    }
  }

  std::vector<double> random_scores;
  for (int run = 0; run < kRandomBaselineRuns; ++run) {
    std::uint64_t seed = config.seed + static_cast<std::uint64_t>(run);
    random_scores.push_back(mean_rouge1(
        clusters, references, config.base.byte_limit, [&](const Cluster& cl) {
          return random_baseline(cl, config.base.byte_limit, seed, config.base.length_cutoff);
        }));
  }
  std::sort(random_scores.begin(), random_scores.end());
  report.random_median = random_scores[random_scores.size() / 2];

  report.lead_score = mean_rouge1(clusters, references, config.base.byte_limit,
                                  [&](const Cluster& cl) {
                                    return lead_baseline(cl, idf, config.base);
                                  });
  return report;
}

std::string format_grid_tsv(const ExperimentReport& report) {
  std::string out = "method\tthreshold\tweight\trouge1\n";
  char buf[128];
  for (const ExperimentCell& cell : report.cells) {
    std::snprintf(buf, sizeof(buf), "%s\t%g\t%g\t%.12g\n", cell.method.c_str(), cell.threshold,
                  cell.weight, cell.rouge1);
    out += buf;
  }
  return out;
}

std::string format_aggregate_tsv(const ExperimentReport& report) {
  std::string out = "method\tthreshold\tmin\tmax\taverage\n";
  char buf[160];
  for (const ExperimentAggregate& agg : report.aggregates) {
    std::snprintf(buf, sizeof(buf), "%s\t%g\t%.12g\t%.12g\t%.12g\n", agg.method.c_str(),
                  agg.threshold, agg.min_score, agg.max_score, agg.avg_score);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "random\t-\t%.12g\t%.12g\t%.12g\n", report.random_median,
                report.random_median, report.random_median);
  out += buf;
  std::snprintf(buf, sizeof(buf), "lead\t-\t%.12g\t%.12g\t%.12g\n", report.lead_score,
                report.lead_score, report.lead_score);
  out += buf;
  return out;
}

}  // namespace lexrank
