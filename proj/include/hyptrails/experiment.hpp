#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyptrails/elicitation.hpp"
#include "hyptrails/evidence.hpp"
#include "hyptrails/synthgen.hpp"

namespace hyptrails {

// One hypothesis to compare: either a builder name with parameters
// ("structural:graph=edges.tsv,diagonal=1") or a precomputed matrix file.
struct HypothesisSpec {
  std::string builder;  // uniform | self-loop | structural | popularity |
                        // cosine | jaccard | geo | scalar | file
  std::map<std::string, std::string> params;
  std::string label;

  // Parses "name" or "name:key=val,key=val".
  static HypothesisSpec parse(const std::string& text);
  static HypothesisSpec from_file(const std::string& path);
};

struct ExperimentConfig {
  std::string trails_path;
  bool reset = false;
  std::vector<HypothesisSpec> hypotheses;
  std::vector<std::uint64_t> k_values{0, 1, 2, 3, 5, 10};
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string format = "tsv";  // tsv | json
  int jobs = 1;
  ResetRowPolicy reset_policy = ResetRowPolicy::uniform_row;

  void validate() const;
};

struct ExperimentResult {
  std::vector<LogEvidence> evidences;  // hypothesis-major, k-minor order
  std::vector<std::string> labels;
  std::vector<std::uint64_t> k_values;
  std::uint64_t data_fingerprint = 0;
};

// Full pipeline: load trails, build hypotheses, elicit a prior per (H, k),
// compute evidence, and write evidence / Bayes-factor / ranking / curve
// reports plus a run manifest under cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct SynthSuiteConfig {
  GeneratorConfig gen;  // gen.n_trails / trail_len / seed drive the corpora
  std::vector<std::uint64_t> k_values{0, 1, 2, 3, 5, 10};
  std::string out_dir = ".";
  std::string format = "tsv";
  int jobs = 1;
};

// Generates the network and the three mechanism corpora, compares the
// uniform / structural / popularity hypotheses on each, writes all reports,
// and checks the expected winner per corpus for every k >= 1 (throws
// AssertionError naming corpus, k and the offending pair on failure).
void run_synthetic_suite(const SynthSuiteConfig& cfg);

struct ToyPriorConfig {
  std::string trails_path;
  bool reset = false;
  std::vector<std::uint64_t> c_values{0, 1, 3, 5, 10, 20};
  std::string out_dir = ".";
  std::string format = "tsv";
};

// Evidence sweep of the uniform / aligned / opposing toy priors over c.
void run_toy_priors(const ToyPriorConfig& cfg);

extern const char* const kToolVersion;

}  // namespace hyptrails
