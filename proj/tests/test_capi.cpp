#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "hyptrails/hyptrails.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "ht_capi_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("corpus lifecycle through the C API") {
  TempDir tmp;
  write_file(tmp.file("trails.tsv"), "A\tB\tC\nC\tA\n");

  ht_corpus* corpus = nullptr;
  REQUIRE(ht_corpus_open(tmp.file("trails.tsv").c_str(), 0, &corpus) == HT_OK);
  CHECK(ht_corpus_num_states(corpus) == 3);
  CHECK(ht_corpus_num_trails(corpus) == 2);
  CHECK(ht_corpus_fingerprint(corpus) != 0);
  CHECK(ht_corpus_write_counts(corpus, tmp.file("counts.tsv").c_str()) == HT_OK);
  CHECK(fs::exists(tmp.file("counts.tsv")));

  ht_hypothesis* hyp = nullptr;
  REQUIRE(ht_hypothesis_uniform(corpus, &hyp) == HT_OK);
  ht_prior* prior = nullptr;
  REQUIRE(ht_prior_elicit(corpus, hyp, 2, 7, nullptr, &prior) == HT_OK);
  CHECK(ht_prior_write(prior, tmp.file("prior.tsv").c_str()) == HT_OK);

  double value = 1.0;
  REQUIRE(ht_log_evidence(corpus, prior, &value) == HT_OK);
  CHECK(value < 0.0);

  ht_prior_close(prior);
  ht_hypothesis_close(hyp);
  ht_corpus_close(corpus);
}

TEST_CASE("reset-aware elicitation through the C API") {
  TempDir tmp;
  write_file(tmp.file("trails.tsv"), "A\tB\nB\tA\n");
  ht_corpus* corpus = nullptr;
  REQUIRE(ht_corpus_open(tmp.file("trails.tsv").c_str(), 1, &corpus) == HT_OK);
  CHECK(ht_corpus_num_states(corpus) == 3);  // A, B + reset

  ht_hypothesis* hyp = nullptr;
  REQUIRE(ht_hypothesis_self_loop(corpus, &hyp) == HT_OK);
  ht_prior* prior = nullptr;
  REQUIRE(ht_prior_elicit(corpus, hyp, 1, 0, "zero", &prior) == HT_OK);
  double value = 0.0;
  CHECK(ht_log_evidence(corpus, prior, &value) == HT_OK);

  CHECK(ht_prior_elicit(corpus, hyp, 1, 0, "bogus", &prior) == HT_ERR_INVALID);
  ht_prior_close(prior);
  ht_hypothesis_close(hyp);
  ht_corpus_close(corpus);
}

TEST_CASE("error codes and messages") {
  ht_corpus* corpus = nullptr;
  CHECK(ht_corpus_open("/nonexistent/trails.tsv", 0, &corpus) == HT_ERR_IO);
  CHECK(std::strlen(ht_last_error()) > 0);

  TempDir tmp;
  write_file(tmp.file("short.tsv"), "A\n");
  CHECK(ht_corpus_open(tmp.file("short.tsv").c_str(), 0, &corpus) == HT_ERR_PARSE);

  CHECK(ht_corpus_open(nullptr, 0, &corpus) == HT_ERR_INVALID);
}

TEST_CASE("degenerate hypotheses surface their status") {
  TempDir tmp;
  write_file(tmp.file("trails.tsv"), "A\tB\n");
  write_file(tmp.file("geo.tsv"), "A\t10\t20\nB\t10\t20\n");
  ht_corpus* corpus = nullptr;
  REQUIRE(ht_corpus_open(tmp.file("trails.tsv").c_str(), 0, &corpus) == HT_OK);
  ht_hypothesis* hyp = nullptr;
  CHECK(ht_hypothesis_geographic(corpus, tmp.file("geo.tsv").c_str(), &hyp) ==
        HT_ERR_DEGENERATE);
  ht_corpus_close(corpus);
}

TEST_CASE("builders from metadata files") {
  TempDir tmp;
  write_file(tmp.file("trails.tsv"), "A\tB\tC\nB\tC\tA\n");
  write_file(tmp.file("graph.tsv"), "A\tB\nB\tC\nC\tA\nA\tC\n");
  write_file(tmp.file("features.tsv"), "A\t1,0\nB\t1,0.2\nC\t0,1\n");
  write_file(tmp.file("tags.tsv"), "A\tx;y\nB\tx\nC\tz\n");
  write_file(tmp.file("geo.tsv"), "A\t0\t0\nB\t0\t1\nC\t45\t45\n");
  write_file(tmp.file("years.tsv"), "A\t1980\nB\t1990\nC\t2000\n");
  write_file(tmp.file("matrix.tsv"), "m=3\nA\tB\t0.5\nB\tC\t1.5\n");

  ht_corpus* corpus = nullptr;
  REQUIRE(ht_corpus_open(tmp.file("trails.tsv").c_str(), 0, &corpus) == HT_OK);
  ht_hypothesis* hyp = nullptr;
  CHECK(ht_hypothesis_structural(corpus, tmp.file("graph.tsv").c_str(), 1.0, &hyp) == HT_OK);
  ht_hypothesis_close(hyp);
  CHECK(ht_hypothesis_popularity(corpus, tmp.file("graph.tsv").c_str(), &hyp) == HT_OK);
  ht_hypothesis_close(hyp);
  CHECK(ht_hypothesis_cosine(corpus, tmp.file("features.tsv").c_str(), 0.1, 0.0, &hyp) == HT_OK);
  ht_hypothesis_close(hyp);
  CHECK(ht_hypothesis_jaccard(corpus, tmp.file("tags.tsv").c_str(), &hyp) == HT_OK);
  ht_hypothesis_close(hyp);
  CHECK(ht_hypothesis_geographic(corpus, tmp.file("geo.tsv").c_str(), &hyp) == HT_OK);
  ht_hypothesis_close(hyp);
  CHECK(ht_hypothesis_scalar(corpus, tmp.file("years.tsv").c_str(), &hyp) == HT_OK);
  ht_hypothesis_close(hyp);
  CHECK(ht_hypothesis_from_file(corpus, tmp.file("matrix.tsv").c_str(), &hyp) == HT_OK);
  ht_hypothesis_close(hyp);
  ht_corpus_close(corpus);
}

TEST_CASE("run + toy-priors + generators through the C API") {
  TempDir tmp;
  CHECK(ht_gen_network(50, 5, 6, 3, tmp.file("net.tsv").c_str()) == HT_OK);
  CHECK(ht_gen_trails(tmp.file("net.tsv").c_str(), "structural", 40, 4, 10.0, 3,
                      tmp.file("trails.tsv").c_str()) == HT_OK);

  const std::string spec1 = "structural:graph=" + tmp.file("net.tsv");
  const char* specs[] = {"uniform", spec1.c_str()};
  uint64_t ks[] = {0, 1, 2};
  const std::string trails_path = tmp.file("trails.tsv");
  ht_run_config cfg{};
  cfg.trails_path = trails_path.c_str();
  cfg.reset = 1;
  cfg.hypothesis_specs = specs;
  cfg.n_hypothesis_specs = 2;
  cfg.k_values = ks;
  cfg.n_k = 3;
  cfg.seed = 11;
  std::string out_dir = tmp.file("out");
  cfg.out_dir = out_dir.c_str();
  cfg.format = "tsv";
  cfg.jobs = 2;
  REQUIRE(ht_run(&cfg) == HT_OK);
  CHECK(fs::exists(tmp.path / "out" / "evidence.tsv"));
  CHECK(fs::exists(tmp.path / "out" / "bayes_factors.tsv"));
  CHECK(fs::exists(tmp.path / "out" / "ranking.tsv"));
  CHECK(fs::exists(tmp.path / "out" / "manifest.json"));
  CHECK(fs::exists(tmp.path / "out" / "curves" / "uniform.tsv"));

  std::string toy_dir = tmp.file("toy");
  uint64_t cs[] = {0, 1, 3};
  CHECK(ht_toy_priors(trails_path.c_str(), 0, cs, 3, toy_dir.c_str(), "json") == HT_OK);
  CHECK(fs::exists(tmp.path / "toy" / "toy_evidence.json"));
}

TEST_CASE("strength category helper") {
  CHECK(std::string(ht_strength_category(0.5)) == "negligible");
  CHECK(std::string(ht_strength_category(7.0)) == "strong");
  CHECK(std::string(ht_strength_category(50.0)) == "decisive");
}
