#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lexrank/corpus.hpp"
#include "lexrank/matrix.hpp"

namespace lexrank {

// Symmetric matrix of pairwise idf-modified cosines, unit diagonal,
// entries in [0, 1]. Row/column order follows flatten().
struct SimilarityMatrix {
  Matrix values;
  std::vector<std::string> sentence_ids;

  int size() const { return values.size(); }
};

// 0/1 matrix with self-loops on the diagonal.
struct AdjacencyMatrix {
  int n = 0;
  std::vector<std::uint8_t> entries;  // row-major

  std::uint8_t at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }

  int degree(int i) const {
    int d = 0;
    for (int j = 0; j < n; ++j) d += at(i, j);
    return d;
  }
};

// Cosine between tf*idf sentence vectors. When either vector has zero norm
// the similarity is 0, except that token-identical sentences score 1.
double idf_modified_cosine(const Sentence& x, const Sentence& y, const IdfTable& idf);

SimilarityMatrix build_similarity_matrix(const std::vector<const Sentence*>& sentences,
                                         const IdfTable& idf);
SimilarityMatrix build_similarity_matrix(const Cluster& cluster, const IdfTable& idf);

// Keeps entries strictly greater than the threshold; t must be in [0, 1).
// The diagonal always survives since every diagonal cosine is 1.
AdjacencyMatrix threshold_adjacency(const SimilarityMatrix& sim, double threshold);

// TSV dump: optional "#ids" header line, then n rows of n reals.
// decimals > 0 writes fixed-point; decimals == 0 writes 12 significant digits.
void save_matrix(const SimilarityMatrix& sim, const std::filesystem::path& path,
                 int decimals = 4);
SimilarityMatrix load_matrix(const std::filesystem::path& path);

}  // namespace lexrank
