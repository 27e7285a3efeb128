#include "lexrank/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lexrank/io.hpp"

namespace lexrank {

double position_feature(const Sentence& sentence, int doc_length) {
  if (doc_length < 1) throw std::invalid_argument("document length must be positive");
  if (sentence.position < 0 || sentence.position >= doc_length) {
    throw std::invalid_argument("sentence position " + std::to_string(sentence.position) +
                                " out of range for document of " + std::to_string(doc_length) +
                                " sentences");
  }
  if (doc_length == 1) return 1.0;
  return static_cast<double>(doc_length - 1 - sentence.position) / (doc_length - 1);
}

std::vector<SentenceRef> length_filter(const std::vector<SentenceRef>& sentences, int cutoff) {
  std::vector<SentenceRef> surviving;
  for (const SentenceRef& ref : sentences) {
    if (ref.sentence->token_count() >= cutoff) surviving.push_back(ref);
  }
  if (surviving.empty()) throw std::runtime_error("no candidate sentences");
  return surviving;
}

std::vector<double> combine(const std::vector<FeatureVector>& features,
                            const std::map<std::string, double>& weights) {
  std::vector<double> scores;
  scores.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    double score = 0.0;
    for (const auto& [name, weight] : weights) {
      auto it = features[i].find(name);
      if (it == features[i].end()) {
        throw std::runtime_error("missing feature value: " + name + " (sentence " +
                                 std::to_string(i) + ")");
      }
      score += weight * it->second;
    }
    scores.push_back(score);
  }
  return scores;
}

std::vector<int> rerank(const std::vector<double>& scores, const SimilarityMatrix& sim,
                        const RerankerConfig& config) {
  const int n = static_cast<int>(scores.size());
  if (sim.size() != n) throw std::invalid_argument("similarity matrix does not cover candidates");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });

  std::vector<int> selected;
  auto max_sim_to_selected = [&](int candidate) {
    double m = 0.0;
    for (int s : selected) m = std::max(m, sim.values(candidate, s));
    return m;
  };

  if (config.mode == RerankMode::Subsumption) {
    for (int candidate : order) {
      if (max_sim_to_selected(candidate) > config.similarity_threshold) continue;
      selected.push_back(candidate);
    }
    return selected;
  }

  // MMR: re-pick the best remaining candidate each round, penalizing by the
  // maximum similarity to the selected set (lambda = 1). A candidate past the
  // similarity threshold stays out for good since the penalty only grows.
  std::vector<int> remaining = order;
  while (!remaining.empty()) {
    int best = -1;
    double best_score = 0.0;
    std::vector<int> next_remaining;
    for (int candidate : remaining) {
      double penalty = max_sim_to_selected(candidate);
      if (penalty > config.similarity_threshold) continue;
      next_remaining.push_back(candidate);
      double effective = scores[candidate] - penalty;
      if (best == -1 || effective > best_score) {
        best = candidate;
        best_score = effective;
      } else if (effective == best_score && candidate < best) {
        best = candidate;
      }
    }
    if (best == -1) break;
    selected.push_back(best);
    next_remaining.erase(std::find(next_remaining.begin(), next_remaining.end(), best));
    remaining = std::move(next_remaining);
  }
  return selected;
}

Summary assemble_summary(const std::vector<SentenceRef>& rank_order, int byte_limit) {
  if (byte_limit < 1) throw std::invalid_argument("byte limit must be positive");
  if (rank_order.empty()) throw std::invalid_argument("nothing selected to assemble");

  Summary summary;
  const std::size_t limit = static_cast<std::size_t>(byte_limit);

  if (rank_order.front().sentence->text.size() > limit) {
    // An oversized opening sentence is cut at the limit.
    const SentenceRef& first = rank_order.front();
    summary.selection_order.push_back(first.sentence->id());
    summary.sentences.push_back(*first.sentence);
    summary.text = first.sentence->text.substr(0, limit);
    return summary;
  }

  std::vector<SentenceRef> taken;
  std::size_t used = 0;
  for (const SentenceRef& ref : rank_order) {
    std::size_t cost = ref.sentence->text.size() + (taken.empty() ? 0 : 1);
    if (used + cost > limit) break;
    taken.push_back(ref);
    used += cost;
  }

  for (const SentenceRef& ref : taken) summary.selection_order.push_back(ref.sentence->id());
  std::stable_sort(taken.begin(), taken.end(), [](const SentenceRef& a, const SentenceRef& b) {
    if (a.doc_index != b.doc_index) return a.doc_index < b.doc_index;
    return a.sentence->position < b.sentence->position;
  });

  for (const SentenceRef& ref : taken) {
    if (!summary.text.empty()) summary.text += ' ';
    summary.text += ref.sentence->text;
    summary.sentences.push_back(*ref.sentence);
  }
  return summary;
}

namespace {

CentralityParams with_defaults(const CentralityParams& params) {
  CentralityParams p = params;
  if (!p.threshold) p.threshold = kDefaultCosineThreshold;
  if (!p.damping) p.damping = kDefaultDamping;
  if (!p.epsilon) p.epsilon = kDefaultEpsilon;
  return p;
}

std::vector<double> raw_feature(const FeatureSpec& spec, const std::vector<SentenceRef>& survivors,
                                const SimilarityMatrix& sim, const IdfTable& idf) {
  if (spec.name == "Position") {
    std::vector<double> values;
    values.reserve(survivors.size());
    for (const SentenceRef& ref : survivors) {
      values.push_back(position_feature(*ref.sentence, ref.doc_length));
    }
    return values;
  }

  const CentralityParams p = with_defaults(spec.params);
  switch (parse_method(spec.name)) {
    case CentralityMethod::Centroid: {
      std::vector<const Sentence*> sentences;
      for (const SentenceRef& ref : survivors) sentences.push_back(ref.sentence);
      return centroid_scores(sentences, idf, spec.params.threshold, spec.distinct_words).scores;
    }
    case CentralityMethod::Degree:
      return degree_centrality(threshold_adjacency(sim, *p.threshold)).scores;
    case CentralityMethod::LexRank:
      return lexrank(sim, *p.threshold, *p.damping, *p.epsilon).scores;
    case CentralityMethod::ContinuousLexRank:
      return continuous_lexrank(sim, *p.damping, *p.epsilon).scores;
  }
  throw std::invalid_argument("unknown feature: " + spec.name);
}

SimilarityMatrix submatrix(const SimilarityMatrix& full, const std::vector<int>& keep) {
  SimilarityMatrix sub;
  const int m = static_cast<int>(keep.size());
  sub.values = Matrix(m);
  sub.sentence_ids.reserve(m);
  for (int i = 0; i < m; ++i) {
    if (!full.sentence_ids.empty()) sub.sentence_ids.push_back(full.sentence_ids[keep[i]]);
    for (int j = 0; j < m; ++j) sub.values(i, j) = full.values(keep[i], keep[j]);
  }
  return sub;
}

}  // namespace

Summary summarize(const Cluster& cluster, const IdfTable& idf, const Policy& policy,
                  const SimilarityMatrix* precomputed, SummarizeTrace* trace) {
  if (policy.features.empty()) throw std::invalid_argument("policy defines no features");

  const std::vector<SentenceRef> all = flatten(cluster);
  const std::vector<SentenceRef> survivors = length_filter(all, policy.length_cutoff);

  SimilarityMatrix sim;
  if (precomputed != nullptr) {
    if (precomputed->size() != static_cast<int>(all.size())) {
      throw std::invalid_argument("precomputed similarity matrix does not cover the cluster (" +
                                  std::to_string(precomputed->size()) + " rows, " +
                                  std::to_string(all.size()) + " sentences)");
    }
    for (std::size_t i = 0; i < precomputed->sentence_ids.size(); ++i) {
      if (precomputed->sentence_ids[i] != all[i].sentence->id()) {
        throw std::invalid_argument("precomputed similarity matrix row " + std::to_string(i + 1) +
                                    " is labeled " + precomputed->sentence_ids[i] +
                                    " but the cluster sentence is " + all[i].sentence->id());
      }
    }
    std::vector<int> keep;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].sentence->token_count() >= policy.length_cutoff) {
        keep.push_back(static_cast<int>(i));
      }
    }
    sim = submatrix(*precomputed, keep);
  } else {
    std::vector<const Sentence*> sentences;
    for (const SentenceRef& ref : survivors) sentences.push_back(ref.sentence);
    sim = build_similarity_matrix(sentences, idf);
  }

  std::vector<FeatureVector> features(survivors.size());
  std::map<std::string, double> weights;
  std::vector<std::string> degenerate;
  std::vector<std::vector<double>> raw_columns;
  for (const FeatureSpec& spec : policy.features) {
    if (weights.count(spec.name) != 0) {
      throw std::invalid_argument("duplicate feature in policy: " + spec.name);
    }
    std::vector<double> raw = raw_feature(spec, survivors, sim, idf);
    CentralityVector column;
    column.scores = raw;
    column = normalize_minmax(column);
    if (column.degenerate) degenerate.push_back(spec.name);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      features[i][spec.name] = column.scores[i];
    }
    weights[spec.name] = spec.weight;
    raw_columns.push_back(std::move(raw));
  }

  std::vector<double> combined = combine(features, weights);
  std::vector<int> selection = rerank(combined, sim, policy.reranker);

  std::vector<SentenceRef> rank_order;
  rank_order.reserve(selection.size());
  for (int idx : selection) rank_order.push_back(survivors[idx]);
  Summary summary = assemble_summary(rank_order, policy.byte_limit);

  if (trace != nullptr) {
    trace->sentences.clear();
    trace->degenerate_features = degenerate;
    std::vector<int> rank_of(survivors.size(), -1);
    for (std::size_t r = 0; r < selection.size(); ++r) rank_of[selection[r]] = static_cast<int>(r);
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      SentenceTrace st;
      st.sentence_id = survivors[i].sentence->id();
      for (std::size_t f = 0; f < policy.features.size(); ++f) {
        st.raw[policy.features[f].name] = raw_columns[f][i];
      }
      st.normalized = features[i];
      st.combined = combined[i];
      st.selection_rank = rank_of[i];
      trace->sentences.push_back(std::move(st));
    }
  }
  return summary;
}

namespace {

double parse_double(const std::string& text, const std::string& where) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty()) {
    throw std::runtime_error("expected a number at " + where + ", got: " + text);
  }
  return v;
}

int parse_int(const std::string& text, const std::string& where) {
  double v = parse_double(text, where);
  if (v != std::floor(v)) throw std::runtime_error("expected an integer at " + where);
  return static_cast<int>(v);
}

void apply_feature_param(FeatureSpec& spec, const std::string& kv, const std::string& where) {
  std::size_t eq = kv.find('=');
  if (eq == std::string::npos) {
    throw std::runtime_error("expected key=value at " + where + ", got: " + kv);
  }
  std::string key = kv.substr(0, eq);
  std::string value = kv.substr(eq + 1);
  if (key == "threshold") {
    spec.params.threshold = parse_double(value, where);
  } else if (key == "damping") {
    double d = parse_double(value, where);
    if (!(d > 0.0 && d < 1.0)) throw std::runtime_error("damping out of (0, 1) at " + where);
    spec.params.damping = d;
  } else if (key == "epsilon") {
    double e = parse_double(value, where);
    if (!(e > 0.0)) throw std::runtime_error("epsilon must be positive at " + where);
    spec.params.epsilon = e;
  } else if (key == "mode") {
    if (value != "distinct" && value != "occurrence") {
      throw std::runtime_error("unknown centroid mode at " + where + ": " + value);
    }
    spec.distinct_words = value == "distinct";
  } else {
    throw std::runtime_error("unknown feature parameter at " + where + ": " + key);
  }
}

}  // namespace

Policy parse_policy(std::istream& in, const std::string& origin) {
  Policy policy;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string directive;
    if (!(words >> directive)) continue;
    const std::string where = origin + ":" + std::to_string(line_no);

    if (directive == "feature") {
      FeatureSpec spec;
      std::string weight;
      if (!(words >> spec.name >> weight)) {
        throw std::runtime_error("feature needs a name and a weight at " + where);
      }
      if (spec.name != "Position") {
        try {
          parse_method(spec.name);
        } catch (const std::invalid_argument&) {
          throw std::runtime_error("unknown feature at " + where + ": " + spec.name);
        }
      }
      spec.weight = parse_double(weight, where);
      if (!(spec.weight > 0.0) || !std::isfinite(spec.weight)) {
        throw std::runtime_error("feature weight must be finite and positive at " + where);
      }
      std::string kv;
      while (words >> kv) apply_feature_param(spec, kv, where);
      if (spec.params.threshold &&
          (spec.name == "Degree" || spec.name == "LexRank") &&
          !(*spec.params.threshold >= 0.0 && *spec.params.threshold < 1.0)) {
        throw std::runtime_error("cosine threshold out of [0, 1) at " + where);
      }
      policy.features.push_back(std::move(spec));
    } else if (directive == "reranker") {
      std::string mode, threshold;
      if (!(words >> mode >> threshold)) {
        throw std::runtime_error("reranker needs a mode and a threshold at " + where);
      }
      if (mode == "subsumption") {
        policy.reranker.mode = RerankMode::Subsumption;
      } else if (mode == "mmr") {
        policy.reranker.mode = RerankMode::Mmr;
      } else {
        throw std::runtime_error("unknown reranker mode at " + where + ": " + mode);
      }
      policy.reranker.similarity_threshold = parse_double(threshold, where);
    } else if (directive == "length_cutoff") {
      std::string value;
      if (!(words >> value)) throw std::runtime_error("length_cutoff needs a value at " + where);
      policy.length_cutoff = parse_int(value, where);
      if (policy.length_cutoff < 0) throw std::runtime_error("negative length_cutoff at " + where);
    } else if (directive == "byte_limit") {
      std::string value;
      if (!(words >> value)) throw std::runtime_error("byte_limit needs a value at " + where);
      policy.byte_limit = parse_int(value, where);
      if (policy.byte_limit < 1) throw std::runtime_error("byte_limit must be positive at " + where);
    } else {
      throw std::runtime_error("unknown policy directive at " + where + ": " + directive);
    }
  }
  // A policy without features is usable as an experiment base (the sweep
  // supplies the features); summarize() rejects it.
  return policy;
}

Policy load_policy(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return parse_policy(in, path.string());
}

void save_trace(const SummarizeTrace& trace, const std::filesystem::path& path) {
  std::string out = "sentence";
  std::vector<std::string> names;
  if (!trace.sentences.empty()) {
    for (const auto& [name, value] : trace.sentences.front().raw) names.push_back(name);
  }
  for (const auto& name : names) out += "\t" + name + "\t" + name + "_norm";
  out += "\tcombined\trank\n";

  char buf[64];
  for (const SentenceTrace& st : trace.sentences) {
    out += st.sentence_id;
    for (const auto& name : names) {
      std::snprintf(buf, sizeof(buf), "\t%.4f\t%.4f", st.raw.at(name), st.normalized.at(name));
      out += buf;
    }
    std::snprintf(buf, sizeof(buf), "\t%.4f\t%d\n", st.combined, st.selection_rank);
    out += buf;
  }
  write_file_atomic(path, out);
}

}  // namespace lexrank
