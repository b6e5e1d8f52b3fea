/* focuscrawl C API.
 *
 * Every call returning fc_status leaves a message for fc_last_error() on
 * failure. Strings handed out by a handle stay valid until the handle is
 * freed. */
#ifndef FOCUS_FOCUS_H
#define FOCUS_FOCUS_H

#include <stddef.h>
#include <stdint.h>

#if defined(FOCUS_BUILDING_LIBRARY)
#define FC_API __attribute__((visibility("default")))
#else
#define FC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_ERR_INVALID_ARGUMENT,
  FC_ERR_CONFIG,
  FC_ERR_IO,
  FC_ERR_EMPTY_CORPUS,
  FC_ERR_EMPTY_TABLE,
  FC_ERR_NO_SEEDS,
  FC_ERR_SEEDS_UNREACHABLE,
  FC_ERR_NO_SEED_PAGES,
  FC_ERR_MANIFEST_INVALID,
  FC_ERR_PARAM_INVALID,
  FC_ERR_EMPTY_RUN,
  FC_ERR_PARSE_FAILURE,
  FC_ERR_INTERNAL
} fc_status;

typedef enum fc_mode { FC_MODE_FOCUSED = 0, FC_MODE_BFS = 1 } fc_mode;

typedef struct fc_table fc_table;
typedef struct fc_run fc_run;

/* Thread-local; empty string when the last call succeeded. */
FC_API const char* fc_last_error(void);
FC_API const char* fc_status_name(fc_status status);
/* Nonzero when the status means bad input rather than a failed run. */
FC_API int fc_status_is_config_error(fc_status status);

/* Weight tables */

/* stoplist_path may be NULL for the built-in English list. */
FC_API fc_status fc_table_build(const char* topic_dir, const char* topic_name,
                                size_t capacity, const char* stoplist_path,
                                fc_table** out);
FC_API fc_status fc_table_load(const char* path, fc_table** out);
FC_API fc_status fc_table_save(const fc_table* table, const char* path);
FC_API size_t fc_table_size(const fc_table* table);
/* rank 0 is the heaviest term. */
FC_API fc_status fc_table_entry(const fc_table* table, size_t rank,
                                const char** term, double* weight);
FC_API void fc_table_free(fc_table* table);

/* Crawling */

typedef struct fc_crawl_options {
  fc_mode mode;
  size_t max_pages;
  int max_level;
  int auto_relevancy_limit; /* nonzero: derive from the seeds */
  double relevancy_limit;
  int tunnel_relevant_links_to_frontier;
  int count_failures;
  unsigned politeness_ms; /* live crawls only */
  unsigned timeout_s;     /* live crawls only */
} fc_crawl_options;

typedef struct fc_record {
  size_t seq;
  const char* url;
  double relevance;
  int relevant;
  int via_tunnel;
  int level;
} fc_record;

FC_API void fc_crawl_options_init(fc_crawl_options* options);

/* graph_path NULL crawls the live web over HTTP. */
FC_API fc_status fc_crawl(const fc_table* table, const char* graph_path,
                          const char* const* seeds, size_t seed_count,
                          const fc_crawl_options* options, fc_run** out);
FC_API size_t fc_run_record_count(const fc_run* run);
FC_API fc_status fc_run_record(const fc_run* run, size_t index, fc_record* out);
FC_API size_t fc_run_failure_count(const fc_run* run);
FC_API size_t fc_run_relevant_count(const fc_run* run);
FC_API double fc_run_relevancy_limit(const fc_run* run);
FC_API fc_status fc_run_write_csv(const fc_run* run, const char* path);
/* Relevant-page database, one JSON object per line. */
FC_API fc_status fc_run_write_db(const fc_run* run, const char* path);
FC_API void fc_run_free(fc_run* run);

/* Evaluation */

/* Writes graph_path and, when corpus_dir is not NULL, the topic corpus.
 * override_seed nonzero replaces the params file's rng_seed with seed. */
FC_API fc_status fc_generate_graph(const char* params_path, int override_seed,
                                   uint64_t seed, const char* graph_path,
                                   const char* corpus_dir);

typedef struct fc_compare_options {
  size_t max_pages;
  int max_level;
  size_t capacity;
  int auto_relevancy_limit;
  double relevancy_limit;
  int tunnel_relevant_links_to_frontier;
} fc_compare_options;

FC_API void fc_compare_options_init(fc_compare_options* options);

/* One comparison per (graphs[i], topic_dirs[i]) pair; report goes to out_dir. */
FC_API fc_status fc_compare(const char* const* graphs,
                            const char* const* topic_dirs, size_t count,
                            const fc_compare_options* options,
                            const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* FOCUS_FOCUS_H */
