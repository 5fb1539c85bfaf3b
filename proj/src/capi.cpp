#include "hyptrails/hyptrails.h"

#include <memory>
#include <string>
#include <vector>

#include "hyptrails/elicitation.hpp"
#include "hyptrails/error.hpp"
#include "hyptrails/evidence.hpp"
#include "hyptrails/experiment.hpp"
#include "hyptrails/hypothesis.hpp"
#include "hyptrails/synthgen.hpp"
#include "hyptrails/trails.hpp"

namespace {

thread_local std::string g_last_error;

ht_status status_of(const hyptrails::Error& e) {
  return static_cast<ht_status>(static_cast<int>(e.code()));
}

template <typename Fn>
ht_status guarded(Fn&& fn) {
  try {
    fn();
    return HT_OK;
  } catch (const hyptrails::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HT_ERR_INVALID;
  }
}

hyptrails::ResetRowPolicy parse_policy(const char* reset_row) {
  if (reset_row == nullptr || std::string(reset_row) == "uniform")
    return hyptrails::ResetRowPolicy::uniform_row;
  if (std::string(reset_row) == "zero") return hyptrails::ResetRowPolicy::zero_row;
  throw hyptrails::InvalidArgument("reset_row must be 'uniform' or 'zero'");
}

}  // namespace

struct ht_corpus {
  hyptrails::TrailCorpus corpus;
  hyptrails::TransitionCounts counts;
  bool reset = false;
};

struct ht_hypothesis {
  hyptrails::HypothesisMatrix matrix;  // over the non-reset states
};

struct ht_prior {
  hyptrails::Prior prior;
};

extern "C" {

const char* ht_last_error(void) { return g_last_error.c_str(); }

const char* ht_version(void) { return hyptrails::kToolVersion; }

ht_status ht_corpus_open(const char* trail_path, int reset, ht_corpus** out) {
  return guarded([&] {
    if (!trail_path || !out) throw hyptrails::InvalidArgument("null argument");
    auto handle = std::make_unique<ht_corpus>();
    handle->reset = reset != 0;
    handle->corpus = hyptrails::make_corpus(hyptrails::read_trail_file(trail_path),
                                            handle->reset);
    handle->counts = hyptrails::count_transitions(handle->corpus, handle->reset);
    *out = handle.release();
  });
}

void ht_corpus_close(ht_corpus* c) { delete c; }

uint32_t ht_corpus_num_states(const ht_corpus* c) {
  return c ? c->corpus.space.size() : 0;
}

size_t ht_corpus_num_trails(const ht_corpus* c) {
  return c ? c->corpus.trails.size() : 0;
}

uint64_t ht_corpus_fingerprint(const ht_corpus* c) {
  return c ? hyptrails::fingerprint(c->counts) : 0;
}

ht_status ht_corpus_write_counts(const ht_corpus* c, const char* path) {
  return guarded([&] {
    if (!c || !path) throw hyptrails::InvalidArgument("null argument");
    hyptrails::write_counts_tsv(path, c->counts);
  });
}

}  // extern "C"

namespace {

template <typename Fn>
ht_status make_hypothesis(const ht_corpus* c, ht_hypothesis** out, Fn&& build) {
  return guarded([&] {
    if (!c || !out) throw hyptrails::InvalidArgument("null argument");
    auto handle = std::make_unique<ht_hypothesis>();
    handle->matrix = build();
    *out = handle.release();
  });
}

}  // namespace

extern "C" {

ht_status ht_hypothesis_uniform(const ht_corpus* c, ht_hypothesis** out) {
  return make_hypothesis(c, out, [&] {
    return hyptrails::uniform_hypothesis(c->corpus.space.non_reset_size());
  });
}

ht_status ht_hypothesis_self_loop(const ht_corpus* c, ht_hypothesis** out) {
  return make_hypothesis(c, out, [&] {
    return hyptrails::self_loop_hypothesis(c->corpus.space.non_reset_size());
  });
}

ht_status ht_hypothesis_structural(const ht_corpus* c, const char* graph_path,
                                   double diagonal, ht_hypothesis** out) {
  return make_hypothesis(c, out, [&] {
    if (!graph_path) throw hyptrails::InvalidArgument("null graph path");
    return hyptrails::structural_hypothesis(
        hyptrails::read_graph_tsv(graph_path, c->corpus.space), diagonal);
  });
}

ht_status ht_hypothesis_popularity(const ht_corpus* c, const char* graph_path,
                                   ht_hypothesis** out) {
  return make_hypothesis(c, out, [&] {
    if (!graph_path) throw hyptrails::InvalidArgument("null graph path");
    return hyptrails::popularity_hypothesis(
        hyptrails::read_graph_tsv(graph_path, c->corpus.space));
  });
}

ht_status ht_hypothesis_cosine(const ht_corpus* c, const char* features_path,
                               double threshold, double diagonal, ht_hypothesis** out) {
  return make_hypothesis(c, out, [&] {
    if (!features_path) throw hyptrails::InvalidArgument("null features path");
    return hyptrails::cosine_similarity_hypothesis(
        hyptrails::read_real_features(features_path, c->corpus.space), threshold, diagonal);
  });
}

ht_status ht_hypothesis_jaccard(const ht_corpus* c, const char* features_path,
                                ht_hypothesis** out) {
  return make_hypothesis(c, out, [&] {
    if (!features_path) throw hyptrails::InvalidArgument("null features path");
    return hyptrails::jaccard_similarity_hypothesis(
        hyptrails::read_binary_features(features_path, c->corpus.space));
  });
}

ht_status ht_hypothesis_geographic(const ht_corpus* c, const char* geo_path,
                                   ht_hypothesis** out) {
  return make_hypothesis(c, out, [&] {
    if (!geo_path) throw hyptrails::InvalidArgument("null geo path");
    return hyptrails::geographic_hypothesis(
        hyptrails::read_geo_table(geo_path, c->corpus.space));
  });
}

ht_status ht_hypothesis_scalar(const ht_corpus* c, const char* values_path,
                               ht_hypothesis** out) {
  return make_hypothesis(c, out, [&] {
    if (!values_path) throw hyptrails::InvalidArgument("null values path");
    return hyptrails::scalar_proximity_hypothesis(
        hyptrails::read_scalar_table(values_path, c->corpus.space));
  });
}

ht_status ht_hypothesis_from_file(const ht_corpus* c, const char* matrix_path,
                                  ht_hypothesis** out) {
  return make_hypothesis(c, out, [&] {
    if (!matrix_path) throw hyptrails::InvalidArgument("null matrix path");
    return hyptrails::read_hypothesis_tsv(matrix_path, c->corpus.space);
  });
}

void ht_hypothesis_close(ht_hypothesis* h) { delete h; }

ht_status ht_prior_elicit(const ht_corpus* c, const ht_hypothesis* h, uint64_t k,
                          uint64_t seed, const char* reset_row, ht_prior** out) {
  return guarded([&] {
    if (!c || !h || !out) throw hyptrails::InvalidArgument("null argument");
    const auto policy = parse_policy(reset_row);
    auto handle = std::make_unique<ht_prior>();
    const auto m_full = c->corpus.space.size();
    if (c->corpus.space.reset_index && h->matrix.m + 1 == m_full) {
      handle->prior = hyptrails::trial_roulette(
          hyptrails::embed_reset(h->matrix, m_full, policy), k, seed);
      handle->prior.reset_policy = hyptrails::reset_policy_name(policy);
    } else {
      handle->prior = hyptrails::trial_roulette(h->matrix, k, seed);
    }
    if (handle->prior.m != m_full)
      throw hyptrails::DimensionError("hypothesis does not match the corpus state space");
    *out = handle.release();
  });
}

ht_status ht_prior_write(const ht_prior* p, const char* path) {
  return guarded([&] {
    if (!p || !path) throw hyptrails::InvalidArgument("null argument");
    hyptrails::write_prior_tsv(path, p->prior);
  });
}

void ht_prior_close(ht_prior* p) { delete p; }

ht_status ht_log_evidence(const ht_corpus* c, const ht_prior* p, double* out) {
  return guarded([&] {
    if (!c || !p || !out) throw hyptrails::InvalidArgument("null argument");
    *out = hyptrails::log_evidence(c->counts, p->prior).value;
  });
}

const char* ht_strength_category(double two_ln_b) {
  return hyptrails::strength_name(hyptrails::interpret_strength(two_ln_b / 2.0));
}

ht_status ht_run(const ht_run_config* cfg) {
  return guarded([&] {
    if (!cfg || !cfg->trails_path || !cfg->out_dir)
      throw hyptrails::InvalidArgument("null run configuration");
    hyptrails::ExperimentConfig ec;
    ec.trails_path = cfg->trails_path;
    ec.reset = cfg->reset != 0;
    for (size_t i = 0; i < cfg->n_hypothesis_specs; ++i)
      ec.hypotheses.push_back(hyptrails::HypothesisSpec::parse(cfg->hypothesis_specs[i]));
    for (size_t i = 0; i < cfg->n_hypothesis_files; ++i)
      ec.hypotheses.push_back(hyptrails::HypothesisSpec::from_file(cfg->hypothesis_files[i]));
    if (cfg->n_k > 0) ec.k_values.assign(cfg->k_values, cfg->k_values + cfg->n_k);
    ec.seed = cfg->seed;
    ec.out_dir = cfg->out_dir;
    if (cfg->format) ec.format = cfg->format;
    if (cfg->jobs > 0) ec.jobs = cfg->jobs;
    ec.reset_policy = parse_policy(cfg->reset_row);
    hyptrails::run_experiment(ec);
  });
}

ht_status ht_synth_suite(const ht_synth_config* cfg) {
  return guarded([&] {
    if (!cfg || !cfg->out_dir) throw hyptrails::InvalidArgument("null suite configuration");
    hyptrails::SynthSuiteConfig sc;
    sc.gen.n_nodes = cfg->n_nodes;
    sc.gen.m_out = cfg->m_out;
    sc.gen.clique = cfg->clique;
    sc.gen.n_trails = cfg->n_trails;
    sc.gen.trail_len = cfg->trail_len;
    sc.gen.temperature = cfg->temperature;
    sc.gen.seed = cfg->seed;
    if (cfg->n_k > 0) sc.k_values.assign(cfg->k_values, cfg->k_values + cfg->n_k);
    sc.out_dir = cfg->out_dir;
    if (cfg->format) sc.format = cfg->format;
    if (cfg->jobs > 0) sc.jobs = cfg->jobs;
    hyptrails::run_synthetic_suite(sc);
  });
}

ht_status ht_toy_priors(const char* trails_path, int reset, const uint64_t* c_values,
                        size_t n_c, const char* out_dir, const char* format) {
  return guarded([&] {
    if (!trails_path || !out_dir) throw hyptrails::InvalidArgument("null argument");
    hyptrails::ToyPriorConfig tc;
    tc.trails_path = trails_path;
    tc.reset = reset != 0;
    if (n_c > 0) tc.c_values.assign(c_values, c_values + n_c);
    tc.out_dir = out_dir;
    if (format) tc.format = format;
    hyptrails::run_toy_priors(tc);
  });
}

ht_status ht_gen_network(uint32_t n_nodes, uint32_t m_out, uint32_t clique,
                         uint64_t seed, const char* out_path) {
  return guarded([&] {
    if (!out_path) throw hyptrails::InvalidArgument("null output path");
    hyptrails::GeneratorConfig cfg;
    cfg.n_nodes = n_nodes;
    cfg.m_out = m_out;
    cfg.clique = clique;
    cfg.seed = seed;
    hyptrails::write_graph_tsv(out_path, hyptrails::price_network(cfg));
  });
}

ht_status ht_gen_trails(const char* graph_path, const char* mechanism,
                        uint32_t n_trails, uint32_t trail_len, double temperature,
                        uint64_t seed, const char* out_path) {
  return guarded([&] {
    if (!graph_path || !mechanism || !out_path)
      throw hyptrails::InvalidArgument("null argument");
    const auto g = hyptrails::read_graph_edge_list(graph_path);
    hyptrails::GeneratorConfig cfg;
    cfg.n_nodes = g.node_count();
    cfg.m_out = 1;
    cfg.clique = 2;
    cfg.n_trails = n_trails;
    cfg.trail_len = trail_len;
    cfg.temperature = temperature;
    cfg.seed = seed;
    const std::string kind(mechanism);
    std::vector<hyptrails::NodeTrail> trails;
    if (kind == "structural") {
      trails = hyptrails::structural_walk(g, cfg);
    } else if (kind == "popularity") {
      trails = hyptrails::popularity_walk(g, cfg);
    } else if (kind == "teleportation") {
      trails = hyptrails::teleportation_walk(g.node_count(), cfg);
    } else {
      throw hyptrails::InvalidArgument("unknown mechanism: '" + kind + "'");
    }
    hyptrails::write_trail_file(out_path, hyptrails::to_raw_trails(trails, &g));
  });
}

}  // extern "C"
