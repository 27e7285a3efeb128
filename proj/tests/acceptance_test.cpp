// Acceptance suite: one test case per shipping criterion, each printing a
// single pass/fail line so the whole gate is readable from the test log.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "lexrank/centrality.hpp"
#include "lexrank/eval.hpp"
#include "lexrank/summarizer.hpp"
#include "synthetic.hpp"
#include "test_util.hpp"

using namespace lexrank;

namespace {

void verdict(int criterion, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what << "\n";
}

SimilarityMatrix fixture_matrix() {
  return load_matrix(testutil::fixture_dir() / "afp_iraq_matrix.tsv");
}

int argmax(const std::vector<double>& v) {
  return static_cast<int>(std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct GridOutcome {
  double worst_cell = 1.0;
  std::map<std::string, double> method_avg;  // grid average per method
  double random_median = 0.0;
  double elapsed_seconds = 0.0;
};

GridOutcome run_grid(const std::vector<Cluster>& clusters,
                     const std::vector<ReferenceSet>& references) {
  ExperimentConfig config;
  config.base.reranker.similarity_threshold = 0.6;
  config.seed = 17;
  IdfTable idf = build_idf(clusters);

  auto start = Clock::now();
  ExperimentReport report = run_experiment(clusters, references, config, idf);
  GridOutcome outcome;
  outcome.elapsed_seconds = seconds_since(start);
  outcome.random_median = report.random_median;

  std::map<std::string, std::pair<double, int>> sums;
  for (const auto& cell : report.cells) {
    outcome.worst_cell = std::min(outcome.worst_cell, cell.rouge1);
    sums[cell.method].first += cell.rouge1;
    sums[cell.method].second += 1;
  }
  for (const auto& [method, sum] : sums) {
    outcome.method_avg[method] = sum.first / sum.second;
  }
  return outcome;
}

}  // namespace

TEST_CASE("criterion 1: degree columns of the reference matrix") {
  const std::vector<std::vector<int>> expected = {
      {5, 7, 2, 6, 5, 7, 2, 9, 5, 6, 5},
      {4, 4, 1, 3, 2, 5, 2, 6, 4, 4, 2},
      {2, 2, 1, 1, 1, 1, 1, 1, 2, 1, 2},
  };
  const std::vector<double> thresholds = {0.1, 0.2, 0.3};

  SimilarityMatrix sim = fixture_matrix();
  auto start = Clock::now();
  int matched = 0;
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    CentralityVector degrees = degree_centrality(threshold_adjacency(sim, thresholds[t]));
    for (std::size_t i = 0; i < expected[t].size(); ++i) {
      if (static_cast<int>(degrees.scores[i]) == expected[t][i]) ++matched;
    }
  }
  double elapsed = seconds_since(start);

  bool ok = matched == 33 && elapsed < 1.0;
  char line[128];
  std::snprintf(line, sizeof(line),
                "all 33 degree values match at t=0.1/0.2/0.3 (%d/33, %.3fs)", matched, elapsed);
  verdict(1, ok, line);
  CHECK(matched == 33);
  CHECK(elapsed < 1.0);
}

TEST_CASE("criterion 2: uniform stationary distribution at threshold 0.3") {
  SimilarityMatrix sim = fixture_matrix();
  double worst = 0.0;
  for (double damping : {0.05, 0.15, 0.5}) {
    CentralityVector scores = lexrank::lexrank(sim, 0.3, damping, 1e-10);
    for (double s : scores.scores) worst = std::max(worst, std::abs(s - 1.0 / 11.0));
  }
  bool ok = worst <= 1e-6;
  char line[128];
  std::snprintf(line, sizeof(line),
                "t=0.3 scores equal 1/11 for damping 0.05/0.15/0.5 (max dev %.2e)", worst);
  verdict(2, ok, line);
  CHECK(ok);
}

TEST_CASE("criterion 3: d4s1 is the most central sentence at t=0.1 and 0.2") {
  SimilarityMatrix sim = fixture_matrix();
  bool ok = true;
  for (double t : {0.1, 0.2}) {
    ok = ok && sim.sentence_ids[argmax(lexrank::lexrank(sim, t, 0.15).scores)] == "d4s1";
    ok = ok && sim.sentence_ids[argmax(degree_centrality(threshold_adjacency(sim, t)).scores)] ==
                   "d4s1";
  }
  verdict(3, ok, "LexRank (d=0.15) and degree argmax is d4s1 at t=0.1 and t=0.2");
  CHECK(ok);
}

TEST_CASE("criterion 4: power method matches the repeated-squaring oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uniform(0.05, 1.0);

  auto start = Clock::now();
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);  // n in [2, 8]
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = uniform(rng);
    }
    StochasticMatrix stochastic = row_stochastic(m);
    auto p = power_method(stochastic, 1e-12);
    auto oracle = testutil::stationary_by_squaring(stochastic.rows);
    for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(p[j] - oracle[j]));
  }
  double elapsed = seconds_since(start);

  bool ok = worst <= 1e-8 && elapsed < 5.0;
  char line[160];
  std::snprintf(line, sizeof(line),
                "200 random positive chains, max |power - oracle| = %.2e (%.2fs)", worst, elapsed);
  verdict(4, ok, line);
  CHECK(worst <= 1e-8);
  CHECK(elapsed < 5.0);
}

TEST_CASE("criterion 5: property suite") {
  bool ok_distribution = true;
  bool ok_monotone = true;
  bool ok_scale = true;
  bool ok_bytes = true;
  bool ok_rouge = true;

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto random_similarity = [&](int n) {
    SimilarityMatrix sim;
    sim.values = Matrix(n);
    for (int i = 0; i < n; ++i) {
      sim.values(i, i) = 1.0;
      for (int j = i + 1; j < n; ++j) {
        double v = uniform(rng);
        sim.values(i, j) = v;
        sim.values(j, i) = v;
      }
    }
    return sim;
  };

  // (a) every LexRank output is a probability distribution
  const double eps = 1e-10;
  for (int trial = 0; trial < 25; ++trial) {
    SimilarityMatrix sim = random_similarity(2 + static_cast<int>(rng() % 14));
    for (double t : {0.0, 0.2, 0.5, 0.9}) {
      auto scores = lexrank::lexrank(sim, t, 0.15, eps).scores;
      double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
      ok_distribution = ok_distribution && std::abs(sum - 1.0) <= 1e-8;
      for (double s : scores) ok_distribution = ok_distribution && s >= 0.0;
    }
    auto scores = continuous_lexrank(sim, 0.15, eps).scores;
    double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
    ok_distribution = ok_distribution && std::abs(sum - 1.0) <= 1e-8;
  }
  verdict(5, ok_distribution, "(a) LexRank outputs sum to 1 within 1e-8 and are non-negative");

  // (b) threshold monotonicity of edge sets
  for (int trial = 0; trial < 10; ++trial) {
    SimilarityMatrix sim = random_similarity(12);
    AdjacencyMatrix prev = threshold_adjacency(sim, 0.0);
    for (double t : {0.1, 0.25, 0.5, 0.8}) {
      AdjacencyMatrix next = threshold_adjacency(sim, t);
      for (int i = 0; i < next.n; ++i) {
        for (int j = 0; j < next.n; ++j) {
          if (next.at(i, j) && !prev.at(i, j)) ok_monotone = false;
        }
      }
      prev = next;
    }
  }
  verdict(5, ok_monotone, "(b) edge sets shrink as the threshold grows");

  // (c) continuous LexRank is invariant under matrix scaling
  for (int trial = 0; trial < 10; ++trial) {
    SimilarityMatrix sim = random_similarity(9);
    auto base = continuous_lexrank(sim, 0.15, 1e-12).scores;
    for (double c : {0.1, 3.0}) {
      SimilarityMatrix scaled = sim;
      for (int i = 0; i < scaled.size(); ++i) {
        for (int j = 0; j < scaled.size(); ++j) scaled.values(i, j) *= c;
      }
      auto rescored = continuous_lexrank(scaled, 0.15, 1e-12).scores;
      for (std::size_t j = 0; j < base.size(); ++j) {
        if (std::abs(rescored[j] - base[j]) >= 1e-10) ok_scale = false;
      }
    }
  }
  verdict(5, ok_scale, "(c) continuous LexRank unchanged under scaling by 0.1 and 3.0");

  // (d) summaries never exceed 665 bytes across randomized clusters
  std::mt19937_64 corpus_rng(123);
  Policy policy;
  policy.features = {FeatureSpec{"LexRank", 1.0, {}, false}, FeatureSpec{"Position", 1.0, {}, false}};
  policy.length_cutoff = 3;
  for (int trial = 0; trial < 100; ++trial) {
    int docs = 1 + static_cast<int>(corpus_rng() % 4);
    std::vector<std::vector<std::string>> texts(docs);
    for (auto& doc : texts) {
      int sentences = 1 + static_cast<int>(corpus_rng() % 5);
      for (int s = 0; s < sentences; ++s) {
        std::string sentence;
        int words = 3 + static_cast<int>(corpus_rng() % 40);
        for (int w = 0; w < words; ++w) {
          sentence += "w" + std::to_string(corpus_rng() % 60) + " ";
        }
        doc.push_back(sentence);
      }
    }
    Cluster cluster = testutil::make_cluster("c", texts);
    Summary summary = summarize(cluster, build_idf(cluster), policy);
    if (summary.byte_length() > 665) ok_bytes = false;
  }
  verdict(5, ok_bytes, "(d) summary byte length <= 665 on 100 randomized clusters");

  // (e) ROUGE-1 endpoints
  auto self = tokenize("one two three four five");
  ok_rouge = ok_rouge && rouge_n(self, {self}, 1).recall == 1.0;
  ok_rouge = ok_rouge && rouge_n(tokenize("aa bb"), {tokenize("cc dd")}, 1).recall == 0.0;
  verdict(5, ok_rouge, "(e) ROUGE-1 is 1 against itself and 0 on disjoint tokens");

  CHECK(ok_distribution);
  CHECK(ok_monotone);
  CHECK(ok_scale);
  CHECK(ok_bytes);
  CHECK(ok_rouge);
}

TEST_CASE("criterion 6: hand-computed golden values") {
  bool ok_idf, ok_cosine, ok_stationary, ok_rouge;

  {
    std::vector<std::vector<std::string>> docs(8);
    for (auto& d : docs) d = {"filler"};
    docs[0].push_back("rare");
    docs[3].push_back("rare");
    ok_idf = std::abs(build_idf(docs).idf("rare") - std::log(4.0)) <= 1e-12;
  }
  {
    IdfTable idf({{"a", 1.0}, {"b", 2.0}, {"c", 2.0}}, 8);
    Sentence x = make_sentence("d1", 0, "a b");
    Sentence y = make_sentence("d1", 1, "a c");
    ok_cosine = std::abs(idf_modified_cosine(x, y, idf) - 0.2) <= 1e-12;
  }
  {
    Matrix m(2);
    m(0, 0) = 0.9; m(0, 1) = 0.1;
    m(1, 0) = 0.5; m(1, 1) = 0.5;
    auto p = power_method(make_stochastic(std::move(m)), 1e-13);
    ok_stationary = std::abs(p[0] - 5.0 / 6.0) <= 1e-9 && std::abs(p[1] - 1.0 / 6.0) <= 1e-9;
  }
  {
    double recall = rouge_n(tokenize("a b c"), {tokenize("a b d")}, 1).recall;
    ok_rouge = std::abs(recall - 2.0 / 3.0) <= 1e-12;
  }

  verdict(6, ok_idf, "idf of a 2-of-8 token is ln 4 within 1e-12");
  verdict(6, ok_cosine, "idf-modified cosine of the {a b}/{a c} pair is 0.2 within 1e-12");
  verdict(6, ok_stationary, "two-state stationary distribution is (5/6, 1/6) within 1e-9");
  verdict(6, ok_rouge, "ROUGE-1 of 'a b c' vs 'a b d' is 2/3 within 1e-12");
  CHECK(ok_idf);
  CHECK(ok_cosine);
  CHECK(ok_stationary);
  CHECK(ok_rouge);
}

TEST_CASE("criterion 7: graph methods beat the random baseline on synthetic clusters") {
  auto corpus = testutil::make_synthetic_corpus(5, 10, 40);
  GridOutcome outcome = run_grid(corpus.clusters, corpus.references);

  bool beats_random = outcome.worst_cell > outcome.random_median;
  bool in_time = outcome.elapsed_seconds < 60.0;
  char line[200];
  std::snprintf(line, sizeof(line),
                "worst grid cell %.4f > random median %.4f; 3x4x8 grid in %.1fs",
                outcome.worst_cell, outcome.random_median, outcome.elapsed_seconds);
  verdict(7, beats_random && in_time, line);
  for (const auto& [method, avg] : outcome.method_avg) {
    std::snprintf(line, sizeof(line), "  %s grid average %.4f", method.c_str(), avg);
    std::cout << line << "\n";
  }
  CHECK(beats_random);
  CHECK(in_time);
}

TEST_CASE("criterion 8: graph methods degrade less than the random baseline under noise") {
  auto corpus = testutil::make_synthetic_corpus(5, 10, 40);
  std::vector<Cluster> noisy = inject_noise(corpus.clusters, 2, 17);

  GridOutcome clean = run_grid(corpus.clusters, corpus.references);
  GridOutcome degraded = run_grid(noisy, corpus.references);

  double random_drop = clean.random_median - degraded.random_median;
  bool ok = true;
  for (const auto& [method, avg] : clean.method_avg) {
    double drop = avg - degraded.method_avg.at(method);
    char line[200];
    std::snprintf(line, sizeof(line), "  %s drop %.4f vs random drop %.4f", method.c_str(), drop,
                  random_drop);
    std::cout << line << "\n";
    if (!(drop < random_drop)) ok = false;
  }

  // Determinism: the same seeds give byte-identical reports.
  ExperimentConfig config;
  config.base.reranker.similarity_threshold = 0.6;
  config.seed = 17;
  IdfTable idf = build_idf(noisy);
  std::string once = format_grid_tsv(run_experiment(noisy, corpus.references, config, idf));
  std::string twice = format_grid_tsv(run_experiment(noisy, corpus.references, config, idf));
  bool deterministic = once == twice;

  char line[200];
  std::snprintf(line, sizeof(line),
                "graph-method degradation below random degradation %.4f; deterministic=%s",
                random_drop, deterministic ? "yes" : "no");
  verdict(8, ok && deterministic, line);
  CHECK(ok);
  CHECK(deterministic);
}
