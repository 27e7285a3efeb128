#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace lexrank {

using TermCounts = std::map<std::string, int>;

// One pre-segmented sentence with its bag-of-words term frequencies.
struct Sentence {
  std::string doc_id;
  int position = 0;  // 0-based index within the owning document
  std::string text;
  TermCounts tf;

  // "d4" at position 0 -> "d4s1".
  std::string id() const { return doc_id + "s" + std::to_string(position + 1); }

  int token_count() const {
    int n = 0;
    for (const auto& [tok, count] : tf) n += count;
    return n;
  }
};

struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;  // positions 0..n-1, contiguous
};

struct Cluster {
  std::string cluster_id;
  std::vector<Document> documents;

  int sentence_count() const {
    int n = 0;
    for (const auto& d : documents) n += static_cast<int>(d.sentences.size());
    return n;
  }
};

// Flattened view in document order, then position order; the canonical
// sentence ordering used by similarity matrices and summaries.
struct SentenceRef {
  const Sentence* sentence = nullptr;
  int doc_index = 0;
  int doc_length = 0;  // sentence count of the owning document
};

std::vector<SentenceRef> flatten(const Cluster& cluster);

// Lowercased maximal runs of ASCII alphanumerics; everything else separates.
std::vector<std::string> tokenize(const std::string& text);

Sentence make_sentence(std::string doc_id, int position, std::string text);

class IdfTable {
 public:
  IdfTable() = default;
  IdfTable(std::map<std::string, double> values, int doc_count);

  // Stored value, or the unseen-token default (log of the document count).
  double idf(const std::string& token) const;

  double default_idf() const { return default_idf_; }
  int doc_count() const { return doc_count_; }
  const std::map<std::string, double>& values() const { return values_; }

 private:
  std::map<std::string, double> values_;
  double default_idf_ = 0.0;
  int doc_count_ = 1;
};

// log(N / n_i) over a collection of tokenized documents.
IdfTable build_idf(const std::vector<std::vector<std::string>>& documents);
IdfTable build_idf(const Cluster& cluster);
IdfTable build_idf(const std::vector<Cluster>& clusters);

// Directory of UTF-8 text files, one sentence per line, blank lines skipped.
// Documents are ordered by filename; doc ids are the filename stems.
Cluster load_cluster(const std::filesystem::path& dir);

// TSV database: "#idf N=<doc_count> base=e" header, then token<TAB>idf lines.
void save_idf(const IdfTable& table, const std::filesystem::path& path);
IdfTable load_idf(const std::filesystem::path& path);

}  // namespace lexrank
