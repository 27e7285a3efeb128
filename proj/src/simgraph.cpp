#include "lexrank/simgraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "lexrank/io.hpp"

namespace lexrank {

namespace {

double tfidf_norm(const Sentence& s, const IdfTable& idf) {
  double sum = 0.0;
  for (const auto& [tok, count] : s.tf) {
    double v = count * idf.idf(tok);
    sum += v * v;
  }
  return std::sqrt(sum);
}

}  // namespace

double idf_modified_cosine(const Sentence& x, const Sentence& y, const IdfTable& idf) {
  const double nx = tfidf_norm(x, idf);
  const double ny = tfidf_norm(y, idf);
  if (nx == 0.0 || ny == 0.0) return x.tf == y.tf ? 1.0 : 0.0;

  double num = 0.0;
  const auto& smaller = x.tf.size() <= y.tf.size() ? x.tf : y.tf;
  const auto& larger = x.tf.size() <= y.tf.size() ? y.tf : x.tf;
  for (const auto& [tok, count] : smaller) {
    auto it = larger.find(tok);
    if (it == larger.end()) continue;
    double w = idf.idf(tok);
    num += count * it->second * w * w;
  }
  return std::clamp(num / (nx * ny), 0.0, 1.0);
}

SimilarityMatrix build_similarity_matrix(const std::vector<const Sentence*>& sentences,
                                         const IdfTable& idf) {
  const int n = static_cast<int>(sentences.size());
  if (n == 0) throw std::runtime_error("empty cluster");
  SimilarityMatrix sim;
  sim.values = Matrix(n);
  sim.sentence_ids.reserve(n);
  for (const Sentence* s : sentences) sim.sentence_ids.push_back(s->id());
  for (int i = 0; i < n; ++i) {
    sim.values(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double v = idf_modified_cosine(*sentences[i], *sentences[j], idf);
      sim.values(i, j) = v;
      sim.values(j, i) = v;
    }
  }
  return sim;
}

SimilarityMatrix build_similarity_matrix(const Cluster& cluster, const IdfTable& idf) {
  std::vector<const Sentence*> sentences;
  for (const SentenceRef& ref : flatten(cluster)) sentences.push_back(ref.sentence);
  return build_similarity_matrix(sentences, idf);
}

AdjacencyMatrix threshold_adjacency(const SimilarityMatrix& sim, double threshold) {
  if (!(threshold >= 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("cosine threshold must be in [0, 1)");
  }
  const int n = sim.size();
  AdjacencyMatrix adj;
  adj.n = n;
  adj.entries.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      adj.entries[static_cast<std::size_t>(i) * n + j] = sim.values(i, j) > threshold ? 1 : 0;
    }
  }
  return adj;
}

void save_matrix(const SimilarityMatrix& sim, const std::filesystem::path& path, int decimals) {
  std::string out;
  if (!sim.sentence_ids.empty()) {
    out += "#ids";
    for (const auto& id : sim.sentence_ids) {
      out += '\t';
      out += id;
    }
    out += '\n';
  }
  const int n = sim.size();
  char buf[64];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (decimals > 0) {
        std::snprintf(buf, sizeof(buf), "%.*f", decimals, sim.values(i, j));
      } else {
        std::snprintf(buf, sizeof(buf), "%.12g", sim.values(i, j));
      }
      if (j > 0) out += '\t';
      out += buf;
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

SimilarityMatrix load_matrix(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (line.front() == '#') {
      std::istringstream header(line);
      std::string tag;
      header >> tag;
      if (tag == "#ids") {
        std::string id;
        while (header >> id) ids.push_back(id);
      }
      continue;
    }
    std::istringstream cells(line);
    std::vector<double> row;
    std::string cell;
    while (cells >> cell) {
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size()) {
        throw std::runtime_error("malformed matrix cell at " + where + ": " + cell);
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }

  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::runtime_error("empty matrix file: " + path.string());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw std::runtime_error("matrix is not square: " + path.string());
    }
  }
  if (!ids.empty() && static_cast<int>(ids.size()) != n) {
    throw std::runtime_error("id header does not match matrix size: " + path.string());
  }

  SimilarityMatrix sim;
  sim.values = Matrix(n);
  sim.sentence_ids = std::move(ids);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = rows[i][j];
      if (v < 0.0 || v > 1.0) {
        throw std::runtime_error("similarity out of [0, 1] at row " + std::to_string(i + 1) +
                                 " column " + std::to_string(j + 1) + " of " + path.string());
      }
      sim.values(i, j) = v;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(sim.values(i, j) - sim.values(j, i)) > 1e-9) {
        throw std::runtime_error("matrix is not symmetric at row " + std::to_string(i + 1) +
                                 " column " + std::to_string(j + 1) + " of " + path.string());
      }
    }
  }
  return sim;
}

}  // namespace lexrank
