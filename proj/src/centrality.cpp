#include "lexrank/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <stdexcept>

#include "lexrank/io.hpp"

namespace lexrank {

std::string to_string(CentralityMethod method) {
  switch (method) {
    case CentralityMethod::Centroid: return "Centroid";
    case CentralityMethod::Degree: return "Degree";
    case CentralityMethod::LexRank: return "LexRank";
    case CentralityMethod::ContinuousLexRank: return "ContinuousLexRank";
  }
  return "?";
}

CentralityMethod parse_method(const std::string& name) {
  if (name == "Centroid") return CentralityMethod::Centroid;
  if (name == "Degree") return CentralityMethod::Degree;
  if (name == "LexRank") return CentralityMethod::LexRank;
  if (name == "ContinuousLexRank") return CentralityMethod::ContinuousLexRank;
  throw std::invalid_argument("unknown centrality method: " + name);
}

StochasticMatrix make_stochastic(Matrix rows) {
  const int n = rows.size();
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (rows(i, j) < 0.0) throw std::invalid_argument("negative transition probability");
      sum += rows(i, j);
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("row " + std::to_string(i) + " sums to " +
                                  std::to_string(sum) + ", not 1");
    }
  }
  return StochasticMatrix{std::move(rows)};
}

StochasticMatrix row_stochastic(const Matrix& weights) {
  const int n = weights.size();
  Matrix rows(n);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (weights(i, j) < 0.0) throw std::invalid_argument("negative edge weight");
      sum += weights(i, j);
    }
    if (sum <= 0.0) throw std::runtime_error("isolated node without self-loop");
    for (int j = 0; j < n; ++j) rows(i, j) = weights(i, j) / sum;
  }
  return StochasticMatrix{std::move(rows)};
}

StochasticMatrix row_stochastic(const AdjacencyMatrix& adjacency) {
  const int n = adjacency.n;
  Matrix weights(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) weights(i, j) = adjacency.at(i, j);
  }
  return row_stochastic(weights);
}

DampedKernel damp(StochasticMatrix base, double damping) {
  if (!(damping > 0.0 && damping < 1.0)) {
    throw std::invalid_argument("damping factor must be in (0, 1)");
  }
  return DampedKernel{std::move(base), damping};
}

namespace {

// Shared power iteration: starts uniform, applies the transposed kernel until
// the L1 change falls below epsilon. apply(p, next) must write M^T p into
// next. Since M is row-stochastic the L1 operator norm of M^T is 1, so the
// returned vector inherits the epsilon bound on its fixed-point residual.
template <typename Apply>
std::vector<double> power_iterate(int n, double epsilon, int max_iterations, Apply apply) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  std::vector<double> p(n, 1.0 / n);
  std::vector<double> next(n);
  for (int iter = 0; iter < max_iterations; ++iter) {
    apply(p, next);
    double delta = 0.0;
    for (int j = 0; j < n; ++j) delta += std::abs(next[j] - p[j]);
    p.swap(next);
    if (delta < epsilon) return p;
  }
  throw std::runtime_error("power method did not converge within " +
                           std::to_string(max_iterations) + " iterations");
}

}  // namespace

std::vector<double> power_method(const StochasticMatrix& m, double epsilon, int max_iterations) {
  const int n = m.size();
  return power_iterate(n, epsilon, max_iterations,
                       [&](const std::vector<double>& p, std::vector<double>& next) {
                         std::fill(next.begin(), next.end(), 0.0);
                         for (int i = 0; i < n; ++i) {
                           const double pi = p[i];
                           for (int j = 0; j < n; ++j) next[j] += m.rows(i, j) * pi;
                         }
                       });
}

std::vector<double> power_method(const DampedKernel& kernel, double epsilon, int max_iterations) {
  // p sums to 1 throughout, so the uniform kernel contributes exactly d/N per
  // component and only the base matrix needs multiplying.
  const int n = kernel.size();
  const double jump = kernel.damping / n;
  const double follow = 1.0 - kernel.damping;
  return power_iterate(n, epsilon, max_iterations,
                       [&](const std::vector<double>& p, std::vector<double>& next) {
                         std::fill(next.begin(), next.end(), jump);
                         for (int i = 0; i < n; ++i) {
                           const double pi = follow * p[i];
                           for (int j = 0; j < n; ++j) next[j] += kernel.base.rows(i, j) * pi;
                         }
                       });
}

CentralityVector centroid_scores(const std::vector<const Sentence*>& sentences,
                                 const IdfTable& idf, std::optional<double> tfidf_threshold,
                                 bool distinct_words) {
  std::map<std::string, double> accumulated;
  for (const Sentence* s : sentences) {
    for (const auto& [tok, count] : s->tf) accumulated[tok] += count * idf.idf(tok);
  }

  double threshold;
  if (tfidf_threshold) {
    threshold = *tfidf_threshold;
  } else {
    double sum = 0.0;
    for (const auto& [tok, v] : accumulated) sum += v;
    threshold = accumulated.empty() ? 0.0 : sum / accumulated.size();
  }

  std::map<std::string, double> centroid;
  for (const auto& [tok, v] : accumulated) {
    if (v > threshold) centroid[tok] = v;
  }

  CentralityVector result;
  result.method = CentralityMethod::Centroid;
  result.params.threshold = threshold;
  result.scores.reserve(sentences.size());
  for (const Sentence* s : sentences) {
    double score = 0.0;
    for (const auto& [tok, count] : s->tf) {
      auto it = centroid.find(tok);
      if (it == centroid.end()) continue;
      score += distinct_words ? it->second : count * it->second;
    }
    result.scores.push_back(score);
  }
  return result;
}

CentralityVector centroid_scores(const Cluster& cluster, const IdfTable& idf,
                                 std::optional<double> tfidf_threshold, bool distinct_words) {
  std::vector<const Sentence*> sentences;
  for (const SentenceRef& ref : flatten(cluster)) sentences.push_back(ref.sentence);
  return centroid_scores(sentences, idf, tfidf_threshold, distinct_words);
}

CentralityVector degree_centrality(const AdjacencyMatrix& adjacency) {
  CentralityVector result;
  result.method = CentralityMethod::Degree;
  result.scores.reserve(adjacency.n);
  for (int i = 0; i < adjacency.n; ++i) {
    result.scores.push_back(static_cast<double>(adjacency.degree(i)));
  }
  return result;
}

CentralityVector lexrank(const SimilarityMatrix& sim, double threshold, double damping,
                         double epsilon) {
  CentralityVector result;
  result.method = CentralityMethod::LexRank;
  result.params = {threshold, damping, epsilon};
  result.scores = power_method(damp(row_stochastic(threshold_adjacency(sim, threshold)), damping),
                               epsilon);
  return result;
}

CentralityVector continuous_lexrank(const SimilarityMatrix& sim, double damping, double epsilon) {
  CentralityVector result;
  result.method = CentralityMethod::ContinuousLexRank;
  result.params = {std::nullopt, damping, epsilon};
  result.scores = power_method(damp(row_stochastic(sim.values), damping), epsilon);
  return result;
}

namespace {

std::pair<double, double> min_max(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("cannot normalize an empty score vector");
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

void warn_degenerate_once() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    std::cerr << "warning: min-max normalization collapsed an all-equal score vector "
                 "(reported once per run)\n";
  });
}

}  // namespace

CentralityVector normalize_max(const CentralityVector& v) {
  auto [lo, hi] = min_max(v.scores);
  CentralityVector out = v;
  if (lo == hi) {
    std::fill(out.scores.begin(), out.scores.end(), 1.0);
    return out;
  }
  for (double& s : out.scores) s /= hi;
  return out;
}

CentralityVector normalize_minmax(const CentralityVector& v) {
  auto [lo, hi] = min_max(v.scores);
  CentralityVector out = v;
  if (lo == hi) {
    std::fill(out.scores.begin(), out.scores.end(), 0.0);
    out.degenerate = true;
    warn_degenerate_once();
    return out;
  }
  for (double& s : out.scores) s = (s - lo) / (hi - lo);
  return out;
}

void save_scores(const CentralityVector& v, const std::vector<std::string>& sentence_ids,
                 const std::filesystem::path& path, int decimals) {
  if (sentence_ids.size() != v.scores.size()) {
    throw std::invalid_argument("sentence id count does not match score count");
  }
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < v.scores.size(); ++i) {
    if (decimals > 0) {
      std::snprintf(buf, sizeof(buf), "%.*f", decimals, v.scores[i]);
    } else {
      std::snprintf(buf, sizeof(buf), "%.12g", v.scores[i]);
    }
    out += sentence_ids[i];
    out += '\t';
    out += buf;
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace lexrank
