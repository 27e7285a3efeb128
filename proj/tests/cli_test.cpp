#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <sys/wait.h>

#include "lexrank/io.hpp"
#include "synthetic.hpp"
#include "test_util.hpp"

using testutil::TempDir;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string cli_path() {
#ifdef LEXRANK_CLI_PATH
  return LEXRANK_CLI_PATH;
#else
  return "./build/tools/lexrank";
#endif
}

RunResult run(const std::string& args, const std::string& env = "") {
  TempDir tmp;
  fs::path out = tmp.file("out.txt");
  fs::path err = tmp.file("err.txt");
  std::string cmd = env + (env.empty() ? "" : " ") + "\"" + cli_path() + "\" " + args + " > \"" +
                    out.string() + "\" 2> \"" + err.string() + "\"";
  int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = lexrank::read_file(out);
  result.err = lexrank::read_file(err);
  return result;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

// Ten-token sentences built from a word pool, one cluster directory per call.
void write_cluster_dir(const fs::path& dir, const lexrank::Cluster& cluster) {
  for (std::size_t d = 0; d < cluster.documents.size(); ++d) {
    std::string content;
    for (const auto& s : cluster.documents[d].sentences) content += s.text + "\n";
    char name[32];
    std::snprintf(name, sizeof(name), "doc%02zu.txt", d);
    testutil::write_file(dir / name, content);
  }
}

}  // namespace

TEST_CASE("idf-build writes the documented header and is reproducible") {
  TempDir tmp;
  for (int d = 0; d < 10; ++d) {
    testutil::write_file(tmp.path() / "corpus" / ("doc" + std::to_string(d) + ".txt"),
                         "shared words everywhere\nsome unique token u" + std::to_string(d) + "\n");
  }

  auto first = run("idf-build " + q(tmp.path() / "corpus") + " -o " + q(tmp.file("idf.tsv")));
  REQUIRE(first.exit_code == 0);
  CHECK(first.out.find("documents: 10") != std::string::npos);

  std::string content = lexrank::read_file(tmp.file("idf.tsv"));
  CHECK(content.rfind("#idf N=10 base=e\n", 0) == 0);

  auto second = run("idf-build " + q(tmp.path() / "corpus") + " -o " + q(tmp.file("idf2.tsv")));
  REQUIRE(second.exit_code == 0);
  CHECK(lexrank::read_file(tmp.file("idf2.tsv")) == content);

  SUBCASE("a single-document corpus has all-zero idf") {
    TempDir solo;
    testutil::write_file(solo.path() / "corpus" / "only.txt", "every word here\n");
    auto result = run("idf-build " + q(solo.path() / "corpus") + " -o " + q(solo.file("idf.tsv")));
    REQUIRE(result.exit_code == 0);
    std::string idf = lexrank::read_file(solo.file("idf.tsv"));
    CHECK(idf.find("every\t0\n") != std::string::npos);
  }
  SUBCASE("an empty corpus fails with a message") {
    TempDir empty;
    fs::create_directories(empty.file("corpus"));
    auto result = run("idf-build " + q(empty.file("corpus")) + " -o " + q(empty.file("idf.tsv")));
    CHECK(result.exit_code != 0);
    CHECK(result.err.find("no documents") != std::string::npos);
  }
}

TEST_CASE("summarize on the bundled cluster") {
  const fs::path fixtures = testutil::fixture_dir();
  const std::string cluster = q(fixtures / "afp_iraq");
  const std::string policy = q(fixtures / "lexrank_t01.policy");
  const std::string matrix = q(fixtures / "afp_iraq_matrix.tsv");

  SUBCASE("with the reference matrix, d4s1 leads the trace") {
    TempDir tmp;
    auto result = run("summarize " + cluster + " --policy " + policy + " --matrix " + matrix +
                      " --trace " + q(tmp.file("trace.tsv")));
    REQUIRE(result.exit_code == 0);
    std::string trace = lexrank::read_file(tmp.file("trace.tsv"));
    CHECK(trace.find("d4s1") != std::string::npos);
    CHECK(trace.find("\t0\n") != std::string::npos);  // rank 0 assigned
    // d4s1 carries the top combined score, so its row ends with rank 0
    for (const auto& line : {std::string("d4s1")}) {
      auto pos = trace.find(line);
      auto eol = trace.find('\n', pos);
      CHECK(trace.substr(pos, eol - pos).ends_with("\t0"));
    }
  }
  SUBCASE("the byte limit shows up in the output file") {
    TempDir tmp;
    auto result = run("summarize " + cluster + " --policy " + policy + " --matrix " + matrix +
                      " -o " + q(tmp.file("summary.txt")));
    REQUIRE(result.exit_code == 0);
    CHECK(fs::file_size(tmp.file("summary.txt")) <= 665);
  }
  SUBCASE("a missing idf file names the path") {
    auto result = run("summarize " + cluster + " --policy " + policy + " --idf /no/such/idf.tsv");
    CHECK(result.exit_code != 0);
    CHECK(result.err.find("/no/such/idf.tsv") != std::string::npos);
  }
  SUBCASE("a missing policy file fails") {
    auto result = run("summarize " + cluster + " --policy /no/such/policy");
    CHECK(result.exit_code != 0);
  }
}

TEST_CASE("score reports clipped unigram recall") {
  TempDir tmp;
  testutil::write_file(tmp.file("candidate.txt"), "a b c\n");
  testutil::write_file(tmp.path() / "refs" / "r1.txt", "a b d\n");

  auto result = run("score --candidate " + q(tmp.file("candidate.txt")) + " --references " +
                    q(tmp.path() / "refs"));
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("r1.txt\t0.666667") != std::string::npos);
  CHECK(result.out.find("mean\t0.666667") != std::string::npos);
}

TEST_CASE("experiment produces grid and aggregate reports") {
  TempDir tmp;
  auto corpus = testutil::make_synthetic_corpus(2, 4, 3);
  for (std::size_t c = 0; c < corpus.clusters.size(); ++c) {
    const std::string id = corpus.clusters[c].cluster_id;
    write_cluster_dir(tmp.path() / "corpus" / id, corpus.clusters[c]);
    for (std::size_t r = 0; r < corpus.references[c].size(); ++r) {
      std::string text;
      for (const auto& tok : corpus.references[c][r]) text += tok + " ";
      testutil::write_file(tmp.path() / "refs" / id / ("ref" + std::to_string(r) + ".txt"),
                           text + "\n");
    }
  }

  const std::string args = "experiment " + q(tmp.path() / "corpus") + " " + q(tmp.path() / "refs") +
                           " --seed 1 -o " + q(tmp.file("report"));
  auto result = run(args);
  REQUIRE(result.exit_code == 0);
  REQUIRE(fs::exists(tmp.file("report") / "grid.tsv"));
  REQUIRE(fs::exists(tmp.file("report") / "aggregate.tsv"));

  std::string grid = lexrank::read_file(tmp.file("report") / "grid.tsv");
  // header + 3 methods x 4 thresholds x 8 weights
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 1 + 3 * 4 * 8);
  std::string agg = lexrank::read_file(tmp.file("report") / "aggregate.tsv");
  CHECK(agg.find("random\t-\t") != std::string::npos);
  CHECK(agg.find("lead\t-\t") != std::string::npos);

  SUBCASE("fixed seeds reproduce identical reports") {
    TempDir again;
    auto rerun = run("experiment " + q(tmp.path() / "corpus") + " " + q(tmp.path() / "refs") +
                     " --seed 1 -o " + q(again.file("report")));
    REQUIRE(rerun.exit_code == 0);
    CHECK(lexrank::read_file(again.file("report") / "grid.tsv") == grid);
    CHECK(lexrank::read_file(again.file("report") / "aggregate.tsv") == agg);
  }
  SUBCASE("--noise logs the grown cluster sizes") {
    auto noisy = run(args + " --noise");
    REQUIRE(noisy.exit_code == 0);
    CHECK(noisy.out.find("6 documents after noise injection") != std::string::npos);
  }
  SUBCASE("mismatched reference ids fail") {
    fs::rename(tmp.path() / "refs" / "c1", tmp.path() / "refs" / "zz");
    auto broken = run(args);
    CHECK(broken.exit_code != 0);
    CHECK(broken.err.find("c1") != std::string::npos);
  }
}

TEST_CASE("verify-fixtures passes on the pristine tree and catches perturbations") {
  auto result = run("verify-fixtures",
                    "LEXRANK_FIXTURES=" + q(testutil::fixture_dir()));
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.find("all fixture checks passed") != std::string::npos);

  SUBCASE("a perturbed matrix cell is named in the failure") {
    TempDir tmp;
    fs::create_directories(tmp.file("fixtures"));
    fs::copy(testutil::fixture_dir() / "afp_iraq", tmp.file("fixtures") / "afp_iraq",
             fs::copy_options::recursive);
    std::string matrix = lexrank::read_file(testutil::fixture_dir() / "afp_iraq_matrix.tsv");
    // flip one edge below the 0.1 threshold, symmetric to keep the file loadable
    auto pos = matrix.find("0.4500");
    while (pos != std::string::npos) {
      matrix.replace(pos, 6, "0.0500");
      pos = matrix.find("0.4500", pos);
    }
    testutil::write_file(tmp.file("fixtures") / "afp_iraq_matrix.tsv", matrix);

    auto broken = run("verify-fixtures", "LEXRANK_FIXTURES=" + q(tmp.file("fixtures")));
    CHECK(broken.exit_code == 1);
    CHECK(broken.out.find("degree mismatch at d1s1 (threshold 0.1)") != std::string::npos);
  }
  SUBCASE("a missing fixture directory is an error") {
    auto broken = run("verify-fixtures", "LEXRANK_FIXTURES=/no/such/dir");
    CHECK(broken.exit_code != 0);
  }
}
