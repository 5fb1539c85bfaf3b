// hyptrails command line front end; all functionality lives behind the
// C API in libhyptrails.
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyptrails/hyptrails.h"

namespace {

int report(ht_status status) {
  if (status == HT_OK) return 0;
  std::fprintf(stderr, "error: %s\n", ht_last_error());
  return static_cast<int>(status);
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian comparison of hypotheses about sequential trails"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ht_version()));

  // ---- run ----
  auto* run = app.add_subcommand("run", "Compare hypotheses on a trail file");
  std::string trails, out_dir = ".", format = "tsv", reset_row = "uniform";
  bool reset = false;
  std::vector<std::string> hyp_specs, hyp_files;
  std::vector<std::uint64_t> k_values{0, 1, 2, 3, 5, 10};
  std::uint64_t seed = 0;
  int jobs = 1;
  run->add_option("--trails", trails, "Trail file (one trail per line, tab-separated)")
      ->required();
  run->add_flag("--reset", reset, "Augment the state space with a reset state");
  run->add_option("--hypothesis", hyp_specs,
                  "Builder spec, e.g. uniform, self-loop, structural:graph=edges.tsv,"
                  "diagonal=1, popularity:graph=edges.tsv, cosine:features=f.tsv,"
                  "threshold=0.1, jaccard:features=f.tsv, geo:coords=g.tsv,"
                  "scalar:values=v.tsv (repeatable)");
  run->add_option("--hypothesis-file", hyp_files, "Matrix TSV file (repeatable)");
  run->add_option("--k", k_values, "k sweep (nonnegative integers, ascending)");
  run->add_option("--seed", seed, "RNG seed for tie breaking");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--format", format, "Report format: tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  run->add_option("--jobs", jobs, "Worker threads for (hypothesis, k) cells");
  run->add_option("--reset-row", reset_row, "Reset-row policy in Q: uniform or zero")
      ->check(CLI::IsMember({"uniform", "zero"}));

  // ---- synth-suite ----
  auto* synth = app.add_subcommand(
      "synth-suite", "Generate the synthetic corpora and verify the expected orderings");
  std::uint32_t n_nodes = 10000, m_out = 10, clique = 11, n_trails = 1000, trail_len = 5;
  double temperature = 10.0;
  synth->add_option("--nodes", n_nodes, "Network size");
  synth->add_option("--out-degree", m_out, "Out-degree of attached nodes");
  synth->add_option("--clique", clique, "Seed clique size");
  synth->add_option("--trails-per-corpus", n_trails, "Trails per mechanism");
  synth->add_option("--trail-length", trail_len, "States per trail");
  synth->add_option("--temperature", temperature, "Softmax temperature of the popularity walk");
  synth->add_option("--k", k_values, "k sweep");
  synth->add_option("--seed", seed, "RNG seed");
  synth->add_option("--out", out_dir, "Output directory")->required();
  synth->add_option("--format", format, "Report format: tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  synth->add_option("--jobs", jobs, "Worker threads");

  // ---- toy-priors ----
  auto* toy = app.add_subcommand("toy-priors",
                                 "Evidence sweep of the uniform/aligned/opposing toy priors");
  std::vector<std::uint64_t> c_values{0, 1, 3, 5, 10, 20};
  toy->add_option("--trails", trails, "Trail file")->required();
  toy->add_flag("--reset", reset, "Augment the state space with a reset state");
  toy->add_option("--c", c_values, "c sweep");
  toy->add_option("--out", out_dir, "Output directory");
  toy->add_option("--format", format, "Report format: tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));

  // ---- gen-network ----
  auto* gen_net = app.add_subcommand("gen-network",
                                     "Generate a preferential-attachment network");
  std::string out_path;
  gen_net->add_option("--nodes", n_nodes, "Network size");
  gen_net->add_option("--out-degree", m_out, "Out-degree of attached nodes");
  gen_net->add_option("--clique", clique, "Seed clique size");
  gen_net->add_option("--seed", seed, "RNG seed");
  gen_net->add_option("--out", out_path, "Edge-list output path")->required();

  // ---- gen-trails ----
  auto* gen_trails = app.add_subcommand("gen-trails", "Simulate walks over a network");
  std::string graph_path, mechanism = "structural";
  gen_trails->add_option("--graph", graph_path, "Edge-list file")->required();
  gen_trails->add_option("--mechanism", mechanism,
                         "structural, popularity or teleportation")
      ->check(CLI::IsMember({"structural", "popularity", "teleportation"}));
  gen_trails->add_option("--trails", n_trails, "Number of trails");
  gen_trails->add_option("--trail-length", trail_len, "States per trail");
  gen_trails->add_option("--temperature", temperature, "Softmax temperature");
  gen_trails->add_option("--seed", seed, "RNG seed");
  gen_trails->add_option("--out", out_path, "Trail file output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    const auto specs = c_strings(hyp_specs);
    const auto files = c_strings(hyp_files);
    ht_run_config cfg{};
    cfg.trails_path = trails.c_str();
    cfg.reset = reset ? 1 : 0;
    cfg.hypothesis_specs = specs.data();
    cfg.n_hypothesis_specs = specs.size();
    cfg.hypothesis_files = files.data();
    cfg.n_hypothesis_files = files.size();
    cfg.k_values = k_values.data();
    cfg.n_k = k_values.size();
    cfg.seed = seed;
    cfg.out_dir = out_dir.c_str();
    cfg.format = format.c_str();
    cfg.jobs = jobs;
    cfg.reset_row = reset_row.c_str();
    return report(ht_run(&cfg));
  }
  if (synth->parsed()) {
    ht_synth_config cfg{};
    cfg.n_nodes = n_nodes;
    cfg.m_out = m_out;
    cfg.clique = clique;
    cfg.n_trails = n_trails;
    cfg.trail_len = trail_len;
    cfg.temperature = temperature;
    cfg.k_values = k_values.data();
    cfg.n_k = k_values.size();
    cfg.seed = seed;
    cfg.out_dir = out_dir.c_str();
    cfg.format = format.c_str();
    cfg.jobs = jobs;
    return report(ht_synth_suite(&cfg));
  }
  if (toy->parsed()) {
    return report(ht_toy_priors(trails.c_str(), reset ? 1 : 0, c_values.data(),
                                c_values.size(), out_dir.c_str(), format.c_str()));
  }
  if (gen_net->parsed()) {
    return report(ht_gen_network(n_nodes, m_out, clique, seed, out_path.c_str()));
  }
  if (gen_trails->parsed()) {
    return report(ht_gen_trails(graph_path.c_str(), mechanism.c_str(), n_trails,
                                trail_len, temperature, seed, out_path.c_str()));
  }
  return 1;
}
