#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lexrank/corpus.hpp"
#include "lexrank/simgraph.hpp"

namespace lexrank {

enum class CentralityMethod { Centroid, Degree, LexRank, ContinuousLexRank };

std::string to_string(CentralityMethod method);
CentralityMethod parse_method(const std::string& name);  // throws on unknown names

struct CentralityParams {
  std::optional<double> threshold;  // cosine threshold (graph methods) or tf*idf cutoff (centroid)
  std::optional<double> damping;    // jump probability d in (0, 1)
  std::optional<double> epsilon;    // power-method convergence tolerance
};

struct CentralityVector {
  std::vector<double> scores;
  CentralityMethod method = CentralityMethod::Degree;
  CentralityParams params;
  bool degenerate = false;  // set when min-max normalization collapsed an all-equal vector
};

// Row-stochastic non-negative matrix; every row sums to 1 within 1e-12.
struct StochasticMatrix {
  Matrix rows;

  int size() const { return rows.size(); }
};

// Represents d*U + (1-d)*B with U the uniform all-1/N matrix, without
// materializing U. Strictly positive, hence irreducible and aperiodic.
struct DampedKernel {
  StochasticMatrix base;
  double damping = 0.15;

  int size() const { return base.size(); }
  double at(int i, int j) const {
    return damping / base.size() + (1.0 - damping) * base.rows(i, j);
  }
};

inline constexpr double kDefaultDamping = 0.15;
inline constexpr double kDefaultEpsilon = 1e-10;
inline constexpr int kPowerIterationCap = 10000;

// Validates the row-sum invariant; the way to build a StochasticMatrix by hand.
StochasticMatrix make_stochastic(Matrix rows);

// Divides each row by its sum. A zero row sum (impossible once self-loops
// exist) is an error.
StochasticMatrix row_stochastic(const Matrix& weights);
StochasticMatrix row_stochastic(const AdjacencyMatrix& adjacency);

DampedKernel damp(StochasticMatrix base, double damping);

// Power iteration from the uniform vector: p <- M^T p until the L1 change
// drops below epsilon. Throws after the iteration cap (periodic or reducible
// chains without damping need not converge). The returned vector satisfies
// ||M^T p - p||_1 <= epsilon.
std::vector<double> power_method(const StochasticMatrix& m, double epsilon,
                                 int max_iterations = kPowerIterationCap);
std::vector<double> power_method(const DampedKernel& kernel, double epsilon,
                                 int max_iterations = kPowerIterationCap);

// Cluster-wide tf*idf accumulation; words above the threshold form the
// centroid and each sentence scores the sum of centroid values of its words
// (once per occurrence by default, once per distinct word when
// distinct_words is set). The threshold defaults to the mean accumulated
// tf*idf over the cluster's vocabulary.
CentralityVector centroid_scores(const std::vector<const Sentence*>& sentences,
                                 const IdfTable& idf,
                                 std::optional<double> tfidf_threshold = std::nullopt,
                                 bool distinct_words = false);
CentralityVector centroid_scores(const Cluster& cluster, const IdfTable& idf,
                                 std::optional<double> tfidf_threshold = std::nullopt,
                                 bool distinct_words = false);

// Row sums of the adjacency matrix, self-loop included.
CentralityVector degree_centrality(const AdjacencyMatrix& adjacency);

// Stationary distribution of the damped walk on the thresholded graph.
CentralityVector lexrank(const SimilarityMatrix& sim, double threshold,
                         double damping = kDefaultDamping, double epsilon = kDefaultEpsilon);

// Same walk on the raw weighted cosine graph, no thresholding.
CentralityVector continuous_lexrank(const SimilarityMatrix& sim,
                                    double damping = kDefaultDamping,
                                    double epsilon = kDefaultEpsilon);

// v / max(v); an all-equal vector maps to all 1.0.
CentralityVector normalize_max(const CentralityVector& v);
// (v - min) / (max - min); an all-equal vector maps to all 0.0 with the
// degenerate flag set.
CentralityVector normalize_minmax(const CentralityVector& v);

// TSV dump: sentence_id<TAB>score per line, in sentence order.
// decimals as in save_matrix.
void save_scores(const CentralityVector& v, const std::vector<std::string>& sentence_ids,
                 const std::filesystem::path& path, int decimals = 4);

}  // namespace lexrank
