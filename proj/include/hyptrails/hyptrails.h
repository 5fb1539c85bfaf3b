/* hyptrails C API: opaque handles + status codes over the comparison core.
 * All functions returning ht_status leave a message retrievable through
 * ht_last_error() on failure. Handles are freed with the matching *_close().
 */
#ifndef HYPTRAILS_H
#define HYPTRAILS_H

#include <stddef.h>
#include <stdint.h>

#ifndef HT_API
#if defined(_WIN32)
#define HT_API
#else
#define HT_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ht_status {
  HT_OK = 0,
  HT_ERR_PARSE = 2,
  HT_ERR_DIMENSION = 3,
  HT_ERR_DEGENERATE = 4,
  HT_ERR_ASSERTION = 5,
  HT_ERR_IO = 6,
  HT_ERR_INVALID = 7
} ht_status;

/* Thread-local message describing the most recent failure. */
HT_API const char* ht_last_error(void);
HT_API const char* ht_version(void);

typedef struct ht_corpus ht_corpus;
typedef struct ht_hypothesis ht_hypothesis;
typedef struct ht_prior ht_prior;

/* ---- trails ---- */

/* Loads a trail file (one trail per line, tab-separated tokens, '#'
 * comments). reset != 0 augments the state space with a reset state. */
HT_API ht_status ht_corpus_open(const char* trail_path, int reset, ht_corpus** out);
HT_API void ht_corpus_close(ht_corpus* c);
HT_API uint32_t ht_corpus_num_states(const ht_corpus* c);
HT_API size_t ht_corpus_num_trails(const ht_corpus* c);
HT_API uint64_t ht_corpus_fingerprint(const ht_corpus* c);
HT_API ht_status ht_corpus_write_counts(const ht_corpus* c, const char* path);

/* ---- hypothesis construction (over the corpus' non-reset states) ---- */

HT_API ht_status ht_hypothesis_uniform(const ht_corpus* c, ht_hypothesis** out);
HT_API ht_status ht_hypothesis_self_loop(const ht_corpus* c, ht_hypothesis** out);
HT_API ht_status ht_hypothesis_structural(const ht_corpus* c, const char* graph_path,
                                          double diagonal, ht_hypothesis** out);
HT_API ht_status ht_hypothesis_popularity(const ht_corpus* c, const char* graph_path,
                                          ht_hypothesis** out);
HT_API ht_status ht_hypothesis_cosine(const ht_corpus* c, const char* features_path,
                                      double threshold, double diagonal,
                                      ht_hypothesis** out);
HT_API ht_status ht_hypothesis_jaccard(const ht_corpus* c, const char* features_path,
                                       ht_hypothesis** out);
HT_API ht_status ht_hypothesis_geographic(const ht_corpus* c, const char* geo_path,
                                          ht_hypothesis** out);
HT_API ht_status ht_hypothesis_scalar(const ht_corpus* c, const char* values_path,
                                      ht_hypothesis** out);
/* TSV triplets "state_i<TAB>state_j<TAB>weight", header "m=<int>". */
HT_API ht_status ht_hypothesis_from_file(const ht_corpus* c, const char* matrix_path,
                                         ht_hypothesis** out);
HT_API void ht_hypothesis_close(ht_hypothesis* h);

/* ---- elicitation / evidence ---- */

/* reset_row: "uniform" (default when NULL) or "zero"; only relevant when the
 * corpus carries a reset state. */
HT_API ht_status ht_prior_elicit(const ht_corpus* c, const ht_hypothesis* h,
                                 uint64_t k, uint64_t seed, const char* reset_row,
                                 ht_prior** out);
HT_API ht_status ht_prior_write(const ht_prior* p, const char* path);
HT_API void ht_prior_close(ht_prior* p);

HT_API ht_status ht_log_evidence(const ht_corpus* c, const ht_prior* p, double* out);
/* Strength band name for a |2 ln B| value. */
HT_API const char* ht_strength_category(double two_ln_b);

/* ---- subcommand-level runners (what the CLI calls) ---- */

typedef struct ht_run_config {
  const char* trails_path;
  int reset;
  const char* const* hypothesis_specs; /* "name:key=val,..." */
  size_t n_hypothesis_specs;
  const char* const* hypothesis_files; /* matrix TSV paths */
  size_t n_hypothesis_files;
  const uint64_t* k_values;
  size_t n_k;
  uint64_t seed;
  const char* out_dir;
  const char* format; /* "tsv" or "json" */
  int jobs;
  const char* reset_row; /* NULL -> "uniform" */
} ht_run_config;
HT_API ht_status ht_run(const ht_run_config* cfg);

typedef struct ht_synth_config {
  uint32_t n_nodes;
  uint32_t m_out;
  uint32_t clique;
  uint32_t n_trails;
  uint32_t trail_len;
  double temperature;
  const uint64_t* k_values;
  size_t n_k;
  uint64_t seed;
  const char* out_dir;
  const char* format;
  int jobs;
} ht_synth_config;
HT_API ht_status ht_synth_suite(const ht_synth_config* cfg);

HT_API ht_status ht_toy_priors(const char* trails_path, int reset,
                               const uint64_t* c_values, size_t n_c,
                               const char* out_dir, const char* format);

HT_API ht_status ht_gen_network(uint32_t n_nodes, uint32_t m_out, uint32_t clique,
                                uint64_t seed, const char* out_path);

/* mechanism: "structural", "popularity" or "teleportation". */
HT_API ht_status ht_gen_trails(const char* graph_path, const char* mechanism,
                               uint32_t n_trails, uint32_t trail_len,
                               double temperature, uint64_t seed,
                               const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* HYPTRAILS_H */
