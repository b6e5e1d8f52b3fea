#include "focus/focus.h"

#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "focus/crawl.hpp"
#include "focus/errors.hpp"
#include "focus/harness.hpp"
#include "focus/topic.hpp"

struct fc_table {
  focus::WeightTable table;
  std::vector<std::pair<focus::Term, double>> ranked;
};

struct fc_run {
  focus::CrawlResult result;
};

namespace {

thread_local std::string g_last_error;

fc_status from_code(focus::ErrorCode code) {
  using focus::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return FC_ERR_INVALID_ARGUMENT;
    case ErrorCode::kConfig: return FC_ERR_CONFIG;
    case ErrorCode::kIo: return FC_ERR_IO;
    case ErrorCode::kEmptyCorpus: return FC_ERR_EMPTY_CORPUS;
    case ErrorCode::kEmptyTable: return FC_ERR_EMPTY_TABLE;
    case ErrorCode::kNoSeeds: return FC_ERR_NO_SEEDS;
    case ErrorCode::kSeedsUnreachable: return FC_ERR_SEEDS_UNREACHABLE;
    case ErrorCode::kNoSeedPages: return FC_ERR_NO_SEED_PAGES;
    case ErrorCode::kManifestInvalid: return FC_ERR_MANIFEST_INVALID;
    case ErrorCode::kParamInvalid: return FC_ERR_PARAM_INVALID;
    case ErrorCode::kEmptyRun: return FC_ERR_EMPTY_RUN;
    case ErrorCode::kParseFailure: return FC_ERR_PARSE_FAILURE;
  }
  return FC_ERR_INTERNAL;
}

fc_status fail(fc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
fc_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return FC_OK;
  } catch (const focus::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FC_ERR_INTERNAL, "unknown error");
  }
}

std::ofstream open_out(const char* path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw focus::Error(focus::ErrorCode::kIo, std::string("cannot write ") + path);
  return out;
}

}  // namespace

extern "C" {

const char* fc_last_error(void) { return g_last_error.c_str(); }

const char* fc_status_name(fc_status status) {
  switch (status) {
    case FC_OK: return "ok";
    case FC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case FC_ERR_CONFIG: return "config";
    case FC_ERR_IO: return "io";
    case FC_ERR_EMPTY_CORPUS: return "empty_corpus";
    case FC_ERR_EMPTY_TABLE: return "empty_table";
    case FC_ERR_NO_SEEDS: return "no_seeds";
    case FC_ERR_SEEDS_UNREACHABLE: return "seeds_unreachable";
    case FC_ERR_NO_SEED_PAGES: return "no_seed_pages";
    case FC_ERR_MANIFEST_INVALID: return "manifest_invalid";
    case FC_ERR_PARAM_INVALID: return "param_invalid";
    case FC_ERR_EMPTY_RUN: return "empty_run";
    case FC_ERR_PARSE_FAILURE: return "parse_failure";
    case FC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

int fc_status_is_config_error(fc_status status) {
  switch (status) {
    case FC_ERR_INVALID_ARGUMENT:
    case FC_ERR_CONFIG:
    case FC_ERR_IO:
    case FC_ERR_EMPTY_CORPUS:
    case FC_ERR_EMPTY_TABLE:
    case FC_ERR_NO_SEEDS:
    case FC_ERR_MANIFEST_INVALID:
    case FC_ERR_PARAM_INVALID:
      return 1;
    default:
      return 0;
  }
}

fc_status fc_table_build(const char* topic_dir, const char* topic_name,
                         size_t capacity, const char* stoplist_path,
                         fc_table** out) {
  if (!topic_dir || !topic_name || !out || capacity == 0) {
    return fail(FC_ERR_INVALID_ARGUMENT, "fc_table_build: bad argument");
  }
  return guarded([&] {
    focus::Stoplist custom;
    if (stoplist_path) custom = focus::Stoplist::from_file(stoplist_path);
    const focus::Stoplist& stop = stoplist_path ? custom : focus::Stoplist::english();
    auto t = std::make_unique<fc_table>();
    t->table = focus::build_topic_table(topic_dir, topic_name, capacity, stop);
    t->ranked = t->table.ranked();
    *out = t.release();
  });
}

fc_status fc_table_load(const char* path, fc_table** out) {
  if (!path || !out) return fail(FC_ERR_INVALID_ARGUMENT, "fc_table_load: bad argument");
  return guarded([&] {
    auto t = std::make_unique<fc_table>();
    t->table = focus::load_table(path);
    t->ranked = t->table.ranked();
    *out = t.release();
  });
}

fc_status fc_table_save(const fc_table* table, const char* path) {
  if (!table || !path) return fail(FC_ERR_INVALID_ARGUMENT, "fc_table_save: bad argument");
  return guarded([&] { focus::save_table(path, table->table); });
}

size_t fc_table_size(const fc_table* table) { return table ? table->ranked.size() : 0; }

fc_status fc_table_entry(const fc_table* table, size_t rank, const char** term,
                         double* weight) {
  if (!table || rank >= table->ranked.size()) {
    return fail(FC_ERR_INVALID_ARGUMENT, "fc_table_entry: rank out of range");
  }
  if (term) *term = table->ranked[rank].first.c_str();
  if (weight) *weight = table->ranked[rank].second;
  return FC_OK;
}

void fc_table_free(fc_table* table) { delete table; }

void fc_crawl_options_init(fc_crawl_options* o) {
  if (!o) return;
  const focus::CrawlConfig d;
  o->mode = FC_MODE_FOCUSED;
  o->max_pages = d.max_pages;
  o->max_level = d.max_level;
  o->auto_relevancy_limit = 1;
  o->relevancy_limit = 0.0;
  o->tunnel_relevant_links_to_frontier = d.tunnel_relevant_links_to_frontier ? 1 : 0;
  o->count_failures = d.count_failures ? 1 : 0;
  o->politeness_ms = static_cast<unsigned>(d.politeness_delay.count());
  o->timeout_s = 10;
}

fc_status fc_crawl(const fc_table* table, const char* graph_path,
                   const char* const* seeds, size_t seed_count,
                   const fc_crawl_options* options, fc_run** out) {
  if (!table || !out || (seed_count && !seeds)) {
    return fail(FC_ERR_INVALID_ARGUMENT, "fc_crawl: bad argument");
  }
  fc_crawl_options defaults;
  fc_crawl_options_init(&defaults);
  const fc_crawl_options& o = options ? *options : defaults;
  if (o.max_level < 0) return fail(FC_ERR_CONFIG, "max_level must be >= 0");
  if (o.max_pages == 0) return fail(FC_ERR_CONFIG, "max_pages must be >= 1");
  if (!o.auto_relevancy_limit && !(o.relevancy_limit >= 0.0 && o.relevancy_limit <= 1.0)) {
    return fail(FC_ERR_CONFIG, "relevancy limit must lie in [0, 1]");
  }
  return guarded([&] {
    focus::CrawlConfig config;
    for (size_t i = 0; i < seed_count; ++i) {
      if (!seeds[i]) throw focus::Error(focus::ErrorCode::kInvalidArgument, "null seed");
      config.seeds.emplace_back(seeds[i]);
    }
    config.mode = o.mode == FC_MODE_BFS ? focus::CrawlMode::kBfs : focus::CrawlMode::kFocused;
    config.max_pages = o.max_pages;
    config.max_level = o.max_level;
    config.table_capacity = table->table.capacity();
    if (!o.auto_relevancy_limit) config.relevancy_limit = o.relevancy_limit;
    config.tunnel_relevant_links_to_frontier = o.tunnel_relevant_links_to_frontier != 0;
    config.count_failures = o.count_failures != 0;
    config.politeness_delay = std::chrono::milliseconds(o.politeness_ms);

    auto run = std::make_unique<fc_run>();
    if (graph_path) {
      focus::FixtureFetcher fetcher = focus::FixtureFetcher::load(graph_path);
      if (config.seeds.empty()) config.seeds = fetcher.manifest().seeds;
      run->result = focus::run_crawl(config, fetcher, table->table);
    } else {
      focus::HttpFetcherOptions http;
      http.politeness_delay = config.politeness_delay;
      http.timeout = std::chrono::seconds(o.timeout_s ? o.timeout_s : 10);
      focus::HttpFetcher fetcher(http);
      run->result = focus::run_crawl(config, fetcher, table->table);
    }
    *out = run.release();
  });
}

size_t fc_run_record_count(const fc_run* run) {
  return run ? run->result.records.size() : 0;
}

fc_status fc_run_record(const fc_run* run, size_t index, fc_record* out) {
  if (!run || !out || index >= run->result.records.size()) {
    return fail(FC_ERR_INVALID_ARGUMENT, "fc_run_record: index out of range");
  }
  const focus::CrawlRecord& r = run->result.records[index];
  out->seq = r.seq;
  out->url = r.url.c_str();
  out->relevance = r.relevance;
  out->relevant = r.relevant ? 1 : 0;
  out->via_tunnel = r.via_tunnel ? 1 : 0;
  out->level = r.level;
  return FC_OK;
}

size_t fc_run_failure_count(const fc_run* run) {
  return run ? run->result.failures.size() : 0;
}

size_t fc_run_relevant_count(const fc_run* run) { return run ? run->result.db.size() : 0; }

double fc_run_relevancy_limit(const fc_run* run) {
  return run ? run->result.relevancy_limit : 0.0;
}

fc_status fc_run_write_csv(const fc_run* run, const char* path) {
  if (!run || !path) return fail(FC_ERR_INVALID_ARGUMENT, "fc_run_write_csv: bad argument");
  return guarded([&] {
    std::ofstream out = open_out(path);
    focus::write_records_csv(out, run->result.records);
  });
}

fc_status fc_run_write_db(const fc_run* run, const char* path) {
  if (!run || !path) return fail(FC_ERR_INVALID_ARGUMENT, "fc_run_write_db: bad argument");
  return guarded([&] {
    std::ofstream out = open_out(path);
    focus::write_db_jsonl(out, run->result.db);
  });
}

void fc_run_free(fc_run* run) { delete run; }

fc_status fc_generate_graph(const char* params_path, int override_seed, uint64_t seed,
                            const char* graph_path, const char* corpus_dir) {
  if (!params_path || !graph_path) {
    return fail(FC_ERR_INVALID_ARGUMENT, "fc_generate_graph: bad argument");
  }
  return guarded([&] {
    focus::SynthGraphParams params = focus::read_graph_params(params_path);
    if (override_seed) params.rng_seed = seed;
    const focus::SynthGraph graph = focus::generate_graph(params);
    std::optional<std::filesystem::path> corpus;
    if (corpus_dir) corpus = corpus_dir;
    focus::write_synth_graph(graph, graph_path, corpus);
  });
}

void fc_compare_options_init(fc_compare_options* o) {
  if (!o) return;
  const focus::ComparisonOptions d;
  o->max_pages = d.max_pages;
  o->max_level = d.max_level;
  o->capacity = d.table_capacity;
  o->auto_relevancy_limit = 1;
  o->relevancy_limit = 0.0;
  o->tunnel_relevant_links_to_frontier = d.tunnel_relevant_links_to_frontier ? 1 : 0;
}

fc_status fc_compare(const char* const* graphs, const char* const* topic_dirs,
                     size_t count, const fc_compare_options* options,
                     const char* out_dir) {
  if (!graphs || !topic_dirs || count == 0 || !out_dir) {
    return fail(FC_ERR_INVALID_ARGUMENT, "fc_compare: bad argument");
  }
  fc_compare_options defaults;
  fc_compare_options_init(&defaults);
  const fc_compare_options& o = options ? *options : defaults;
  if (o.max_level < 0) return fail(FC_ERR_CONFIG, "max_level must be >= 0");
  if (o.max_pages == 0 || o.capacity == 0) {
    return fail(FC_ERR_CONFIG, "max_pages and capacity must be >= 1");
  }
  if (!o.auto_relevancy_limit && !(o.relevancy_limit >= 0.0 && o.relevancy_limit <= 1.0)) {
    return fail(FC_ERR_CONFIG, "relevancy limit must lie in [0, 1]");
  }
  return guarded([&] {
    focus::ComparisonOptions opts;
    opts.max_pages = o.max_pages;
    opts.max_level = o.max_level;
    opts.table_capacity = o.capacity;
    if (!o.auto_relevancy_limit) opts.relevancy_limit = o.relevancy_limit;
    opts.tunnel_relevant_links_to_frontier = o.tunnel_relevant_links_to_frontier != 0;
    std::vector<focus::TopicComparison> rows;
    for (size_t i = 0; i < count; ++i) {
      if (!graphs[i] || !topic_dirs[i]) {
        throw focus::Error(focus::ErrorCode::kInvalidArgument, "null path");
      }
      focus::ComparisonInput input;
      input.graph = graphs[i];
      input.topic_dir = topic_dirs[i];
      rows.push_back(focus::run_comparison(input, opts));
    }
    focus::write_comparison_report(out_dir, rows, opts);
  });
}

}  // extern "C"
