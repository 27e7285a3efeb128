#include "lexrank/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lexrank/io.hpp"

namespace lexrank {

namespace {

bool is_token_char(unsigned char c) { return std::isalnum(c) != 0; }

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_token_char(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Sentence make_sentence(std::string doc_id, int position, std::string text) {
  Sentence s;
  s.doc_id = std::move(doc_id);
  s.position = position;
  s.text = std::move(text);
  for (auto& tok : tokenize(s.text)) ++s.tf[tok];
  return s;
}

std::vector<SentenceRef> flatten(const Cluster& cluster) {
  std::vector<SentenceRef> out;
  out.reserve(cluster.sentence_count());
  for (int d = 0; d < static_cast<int>(cluster.documents.size()); ++d) {
    const Document& doc = cluster.documents[d];
    for (const Sentence& s : doc.sentences) {
      out.push_back({&s, d, static_cast<int>(doc.sentences.size())});
    }
  }
  return out;
}

IdfTable::IdfTable(std::map<std::string, double> values, int doc_count)
    : values_(std::move(values)), doc_count_(doc_count) {
  if (doc_count_ < 1) throw std::invalid_argument("idf table needs a positive document count");
  default_idf_ = std::log(static_cast<double>(doc_count_));
  for (const auto& [token, value] : values_) {
    if (value < 0.0) throw std::invalid_argument("negative idf for token: " + token);
  }
}

double IdfTable::idf(const std::string& token) const {
  auto it = values_.find(token);
  return it == values_.end() ? default_idf_ : it->second;
}

IdfTable build_idf(const std::vector<std::vector<std::string>>& documents) {
  if (documents.empty()) throw std::runtime_error("no documents");
  const double n = static_cast<double>(documents.size());
  std::map<std::string, int> doc_freq;
  for (const auto& doc : documents) {
    std::set<std::string> seen(doc.begin(), doc.end());
    for (const auto& tok : seen) ++doc_freq[tok];
  }
  std::map<std::string, double> values;
  for (const auto& [tok, df] : doc_freq) values[tok] = std::log(n / df);
  return IdfTable(std::move(values), static_cast<int>(documents.size()));
}

namespace {

std::vector<std::string> document_tokens(const Document& doc) {
  std::vector<std::string> tokens;
  for (const Sentence& s : doc.sentences) {
    for (const auto& [tok, count] : s.tf) {
      for (int k = 0; k < count; ++k) tokens.push_back(tok);
    }
  }
  return tokens;
}

}  // namespace

IdfTable build_idf(const Cluster& cluster) {
  std::vector<std::vector<std::string>> docs;
  for (const Document& d : cluster.documents) docs.push_back(document_tokens(d));
  return build_idf(docs);
}

IdfTable build_idf(const std::vector<Cluster>& clusters) {
  std::vector<std::vector<std::string>> docs;
  for (const Cluster& c : clusters) {
    for (const Document& d : c.documents) docs.push_back(document_tokens(d));
  }
  return build_idf(docs);
}

Cluster load_cluster(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw std::runtime_error("cannot read cluster directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  if (files.empty()) throw std::runtime_error("no documents in: " + dir.string());

  Cluster cluster;
  cluster.cluster_id = dir.filename().string();
  for (const auto& file : files) {
    Document doc;
    doc.doc_id = file.stem().string();
    std::istringstream in(read_file(file));
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
        line.pop_back();
      }
      std::size_t start = line.find_first_not_of(" \t");
      if (start == std::string::npos) continue;  // blank line
      doc.sentences.push_back(make_sentence(
          doc.doc_id, static_cast<int>(doc.sentences.size()), line.substr(start)));
    }
    if (doc.sentences.empty()) {
      throw std::runtime_error("document has no sentences: " + file.string());
    }
    cluster.documents.push_back(std::move(doc));
  }
  return cluster;
}

void save_idf(const IdfTable& table, const std::filesystem::path& path) {
  std::string out = "#idf N=" + std::to_string(table.doc_count()) + " base=e\n";
  for (const auto& [token, value] : table.values()) {
    out += token;
    out += '\t';
    out += format_real(value);
    out += '\n';
  }
  write_file_atomic(path, out);
}

IdfTable load_idf(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty idf file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();

  int doc_count = 0;
  if (std::sscanf(line.c_str(), "#idf N=%d base=e", &doc_count) != 1 || doc_count < 1) {
    throw std::runtime_error("malformed idf header in " + path.string() + ": " + line);
  }

  std::map<std::string, double> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw std::runtime_error("malformed idf line at " + where);
    }
    std::string token = line.substr(0, tab);
    char* end = nullptr;
    double value = std::strtod(line.c_str() + tab + 1, &end);
    if (end == line.c_str() + tab + 1 || *end != '\0') {
      throw std::runtime_error("malformed idf value at " + where);
    }
    if (value < 0.0) throw std::runtime_error("negative idf at " + where);
    if (!values.emplace(token, value).second) {
      throw std::runtime_error("duplicate token at " + where);
    }
  }
  return IdfTable(std::move(values), doc_count);
}

}  // namespace lexrank
