// focuscrawl command line. Talks to the library only through focus.h.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "focus/focus.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRun = 3;

int report(fc_status status) {
  if (status == FC_OK) return kExitOk;
  std::fprintf(stderr, "focuscrawl: %s: %s\n", fc_status_name(status), fc_last_error());
  return fc_status_is_config_error(status) ? kExitConfig : kExitRun;
}

int config_error(const std::string& message) {
  std::fprintf(stderr, "focuscrawl: config: %s\n", message.c_str());
  return kExitConfig;
}

// One URL per line; blank lines and '#' comments skipped.
bool read_seeds(const std::string& path, std::vector<std::string>& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return true;
}

// "auto" or a number in [0, 1].
bool parse_limit(const std::string& text, int& is_auto, double& value) {
  if (text == "auto") {
    is_auto = 1;
    return true;
  }
  char* end = nullptr;
  value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !(value >= 0.0 && value <= 1.0)) return false;
  is_auto = 0;
  return true;
}

struct BuildTableArgs {
  std::string topic_dir;
  std::string topic;
  std::size_t capacity = 50;
  std::string out = "table.tsv";
  std::string stoplist;
};

int cmd_build_table(const BuildTableArgs& a) {
  std::string topic = a.topic;
  if (topic.empty()) {
    topic = std::filesystem::path(a.topic_dir).lexically_normal().filename().string();
    if (topic.empty()) {
      topic = std::filesystem::path(a.topic_dir).lexically_normal().parent_path().filename().string();
    }
  }
  fc_table* table = nullptr;
  fc_status s = fc_table_build(a.topic_dir.c_str(), topic.c_str(), a.capacity,
                               a.stoplist.empty() ? nullptr : a.stoplist.c_str(), &table);
  if (s != FC_OK) return report(s);
  s = fc_table_save(table, a.out.c_str());
  if (s == FC_OK) {
    std::fprintf(stderr, "%zu terms -> %s\n", fc_table_size(table), a.out.c_str());
  }
  fc_table_free(table);
  return report(s);
}

struct CrawlArgs {
  std::string mode = "focused";
  std::string graph;
  bool live = false;
  std::string seeds;
  std::string table;
  std::size_t max_pages = 1000;
  int max_level = 2;
  std::string relevancy_limit = "auto";
  bool frontier_tunnel = false;
  bool count_failures = false;
  unsigned politeness_ms = 1000;
  std::string out = "run.csv";
  std::string db;
};

int cmd_crawl(const CrawlArgs& a) {
  if (a.live == !a.graph.empty()) return config_error("give exactly one of --graph or --live");
  fc_crawl_options o;
  fc_crawl_options_init(&o);
  o.mode = a.mode == "bfs" ? FC_MODE_BFS : FC_MODE_FOCUSED;
  o.max_pages = a.max_pages;
  o.max_level = a.max_level;
  o.tunnel_relevant_links_to_frontier = a.frontier_tunnel ? 1 : 0;
  o.count_failures = a.count_failures ? 1 : 0;
  o.politeness_ms = a.politeness_ms;
  if (!parse_limit(a.relevancy_limit, o.auto_relevancy_limit, o.relevancy_limit)) {
    return config_error("--relevancy-limit must be 'auto' or a number in [0, 1]");
  }

  std::vector<std::string> seeds;
  if (!a.seeds.empty() && !read_seeds(a.seeds, seeds)) {
    return config_error("cannot read seeds file " + a.seeds);
  }
  if (a.live && seeds.empty()) return config_error("--live needs --seeds");
  std::vector<const char*> seed_ptrs;
  for (const auto& s : seeds) seed_ptrs.push_back(s.c_str());

  fc_table* table = nullptr;
  fc_status s = fc_table_load(a.table.c_str(), &table);
  if (s != FC_OK) return report(s);

  fc_run* run = nullptr;
  s = fc_crawl(table, a.live ? nullptr : a.graph.c_str(), seed_ptrs.data(),
               seed_ptrs.size(), &o, &run);
  fc_table_free(table);
  if (s != FC_OK) return report(s);

  s = fc_run_write_csv(run, a.out.c_str());
  if (s == FC_OK && !a.db.empty()) s = fc_run_write_db(run, a.db.c_str());
  if (s == FC_OK) {
    std::fprintf(stderr, "%zu pages, %zu relevant, %zu failed, limit %.3f -> %s\n",
                 fc_run_record_count(run), fc_run_relevant_count(run),
                 fc_run_failure_count(run), fc_run_relevancy_limit(run), a.out.c_str());
  }
  fc_run_free(run);
  // Write failures are a failed run, not bad input.
  if (s == FC_ERR_IO) {
    std::fprintf(stderr, "focuscrawl: io: %s\n", fc_last_error());
    return kExitRun;
  }
  return report(s);
}

struct GenGraphArgs {
  std::string params;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out = "graph.json";
  std::string corpus_dir;
};

int cmd_gen_graph(const GenGraphArgs& a) {
  std::string corpus = a.corpus_dir;
  if (corpus.empty()) {
    corpus = (std::filesystem::path(a.out).parent_path() / "corpus").string();
  }
  fc_status s = fc_generate_graph(a.params.c_str(), a.has_seed ? 1 : 0, a.seed,
                                  a.out.c_str(), corpus.c_str());
  if (s == FC_OK) std::fprintf(stderr, "%s, corpus in %s\n", a.out.c_str(), corpus.c_str());
  return report(s);
}

struct CompareArgs {
  std::vector<std::string> graphs;
  std::vector<std::string> topic_dirs;
  std::string out = "report";
  std::size_t max_pages = 1000;
  int max_level = 2;
  std::size_t capacity = 50;
  std::string relevancy_limit = "auto";
  bool frontier_tunnel = false;
};

int cmd_compare(const CompareArgs& a) {
  if (a.graphs.size() != a.topic_dirs.size()) {
    return config_error("--graph and --topic-dir must be given the same number of times");
  }
  fc_compare_options o;
  fc_compare_options_init(&o);
  o.max_pages = a.max_pages;
  o.max_level = a.max_level;
  o.capacity = a.capacity;
  o.tunnel_relevant_links_to_frontier = a.frontier_tunnel ? 1 : 0;
  if (!parse_limit(a.relevancy_limit, o.auto_relevancy_limit, o.relevancy_limit)) {
    return config_error("--relevancy-limit must be 'auto' or a number in [0, 1]");
  }
  std::vector<const char*> graphs, dirs;
  for (const auto& g : a.graphs) graphs.push_back(g.c_str());
  for (const auto& d : a.topic_dirs) dirs.push_back(d.c_str());
  fc_status s = fc_compare(graphs.data(), dirs.data(), graphs.size(), &o, a.out.c_str());
  if (s == FC_OK) std::fprintf(stderr, "report in %s\n", a.out.c_str());
  return report(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Focused crawler with tunneling, plus a breadth-first baseline"};
  app.require_subcommand(1);

  BuildTableArgs bt;
  auto* build = app.add_subcommand("build-table", "Build a topic weight table from documents");
  build->add_option("topic-dir", bt.topic_dir, "Directory of topic documents")->required();
  build->add_option("--topic", bt.topic, "Topic name (default: directory name)");
  build->add_option("--capacity", bt.capacity, "Number of terms kept")
      ->check(CLI::PositiveNumber);
  build->add_option("--out", bt.out, "Output TSV");
  build->add_option("--stoplist", bt.stoplist, "Stopword file (default: built-in English)");

  CrawlArgs cr;
  auto* crawl = app.add_subcommand("crawl", "Run one crawl");
  crawl->add_option("--mode", cr.mode)->check(CLI::IsMember({"focused", "bfs"}));
  auto* graph_opt = crawl->add_option("--graph", cr.graph, "Fixture graph (graph.json or its directory)");
  auto* live_opt = crawl->add_flag("--live", cr.live, "Fetch over HTTP");
  graph_opt->excludes(live_opt);
  crawl->add_option("--seeds", cr.seeds, "Seed URLs, one per line (default: the graph's)");
  crawl->add_option("--table", cr.table, "Weight table TSV")->required();
  crawl->add_option("--max-pages", cr.max_pages)->check(CLI::PositiveNumber);
  crawl->add_option("--max-level", cr.max_level)->check(CLI::NonNegativeNumber);
  crawl->add_option("--relevancy-limit", cr.relevancy_limit, "auto or a number in [0, 1]");
  crawl->add_flag("--tunnel-links-to-frontier", cr.frontier_tunnel,
                  "Relevant pages found by tunneling feed the frontier");
  crawl->add_flag("--count-failures", cr.count_failures, "Failed fetches count as downloads");
  crawl->add_option("--politeness-ms", cr.politeness_ms, "Per-host delay for --live");
  crawl->add_option("--out", cr.out, "Run CSV");
  crawl->add_option("--db", cr.db, "Also write relevant pages as JSON lines");

  GenGraphArgs gg;
  auto* gen = app.add_subcommand("gen-graph", "Generate a synthetic topical web graph");
  gen->add_option("--params", gg.params, "Parameter JSON")->required();
  auto* seed_opt = gen->add_option("--seed", gg.seed, "Overrides rng_seed");
  gen->add_option("--out", gg.out, "Output graph.json");
  gen->add_option("--corpus-dir", gg.corpus_dir, "Topic corpus directory (default: corpus/ next to --out)");

  CompareArgs cp;
  auto* cmp = app.add_subcommand("compare", "Focused vs breadth-first on fixture graphs");
  cmp->add_option("--graph", cp.graphs, "Graph per topic (repeatable)")->required();
  cmp->add_option("--topic-dir", cp.topic_dirs, "Topic documents per graph (repeatable)")->required();
  cmp->add_option("--out", cp.out, "Report directory");
  cmp->add_option("--max-pages", cp.max_pages)->check(CLI::PositiveNumber);
  cmp->add_option("--max-level", cp.max_level)->check(CLI::NonNegativeNumber);
  cmp->add_option("--capacity", cp.capacity)->check(CLI::PositiveNumber);
  cmp->add_option("--relevancy-limit", cp.relevancy_limit, "auto or a number in [0, 1]");
  cmp->add_flag("--tunnel-links-to-frontier", cp.frontier_tunnel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (*build) return cmd_build_table(bt);
  if (*crawl) return cmd_crawl(cr);
  if (*gen) {
    gg.has_seed = seed_opt->count() > 0;
    return cmd_gen_graph(gg);
  }
  return cmd_compare(cp);
}
