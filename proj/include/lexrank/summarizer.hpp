#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lexrank/centrality.hpp"
#include "lexrank/corpus.hpp"
#include "lexrank/simgraph.hpp"

namespace lexrank {

// Per-sentence feature values, normalized to [0, 1].
using FeatureVector = std::map<std::string, double>;

enum class RerankMode { Subsumption, Mmr };

struct RerankerConfig {
  RerankMode mode = RerankMode::Subsumption;
  double similarity_threshold = 0.5;
};

// One scoring feature: "Position" or a centrality method name
// (Centroid, Degree, LexRank, ContinuousLexRank).
struct FeatureSpec {
  std::string name;
  double weight = 1.0;
  CentralityParams params;
  bool distinct_words = false;  // Centroid occurrence-counting mode
};

// One experiment configuration: features and weights, length cutoff,
// reranker settings and the summary byte budget.
struct Policy {
  std::vector<FeatureSpec> features;
  int length_cutoff = 9;
  RerankerConfig reranker;
  int byte_limit = 665;
};

inline constexpr int kDefaultByteLimit = 665;
inline constexpr int kDefaultLengthCutoff = 9;
inline constexpr double kDefaultCosineThreshold = 0.1;

// Line-oriented policy syntax, one directive per line ('#' starts a comment):
//   feature <name> <weight> [key=value ...]
//   reranker <subsumption|mmr> <similarity_threshold>
//   length_cutoff <n>
//   byte_limit <n>
// Feature keys: threshold=, damping=, epsilon=, mode=distinct (Centroid only).
Policy parse_policy(std::istream& in, const std::string& origin = "<policy>");
Policy load_policy(const std::filesystem::path& path);

struct Summary {
  std::vector<Sentence> sentences;          // source order: (document, position)
  std::vector<std::string> selection_order; // sentence ids in rank (selection) order
  std::string text;                         // sentences joined by single spaces

  int byte_length() const { return static_cast<int>(text.size()); }
};

// Per-sentence pipeline trace for diagnostics and the --trace dump.
struct SentenceTrace {
  std::string sentence_id;
  FeatureVector raw;
  FeatureVector normalized;
  double combined = 0.0;
  int selection_rank = -1;  // -1: not selected
};

struct SummarizeTrace {
  std::vector<SentenceTrace> sentences;
  std::vector<std::string> degenerate_features;  // constant across all candidates
};

// First sentence of a document scores 1, the last 0, linear in between;
// single-sentence documents score 1.
double position_feature(const Sentence& sentence, int doc_length);

// Keeps sentences with token count >= cutoff; throws if nothing survives.
std::vector<SentenceRef> length_filter(const std::vector<SentenceRef>& sentences, int cutoff);

// score(s) = sum_f weight_f * feature_f(s); every weighted feature must be present.
std::vector<double> combine(const std::vector<FeatureVector>& features,
                            const std::map<std::string, double>& weights);

// Greedy selection in descending score order with redundancy control:
//  - subsumption: skip candidates whose similarity to any selected sentence
//    exceeds the threshold;
//  - mmr: additionally rank remaining candidates by score minus their maximum
//    similarity to the selected set (lambda = 1).
// Ties break toward the earlier sentence. Returns indices in selection order.
std::vector<int> rerank(const std::vector<double>& scores, const SimilarityMatrix& sim,
                        const RerankerConfig& config);

// Takes sentences in rank order while the running byte count (single-space
// separators included) stays within the limit; an oversized first sentence is
// truncated at the limit. The final summary is re-ordered by source position.
Summary assemble_summary(const std::vector<SentenceRef>& rank_order, int byte_limit);

// The full pipeline: length filter, feature extraction, per-feature min-max
// normalization, weighted combination, rerank, byte-limited assembly.
// `precomputed` optionally supplies the similarity matrix over the whole
// cluster (in flatten() order) in place of recomputing cosines.
Summary summarize(const Cluster& cluster, const IdfTable& idf, const Policy& policy,
                  const SimilarityMatrix* precomputed = nullptr,
                  SummarizeTrace* trace = nullptr);

void save_trace(const SummarizeTrace& trace, const std::filesystem::path& path);

}  // namespace lexrank
