#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "focus/crawl.hpp"
#include "focus/fetch.hpp"

namespace focus {

// ---------------------------------------------------------------------------
// Precision (harvest rate) curves

struct PrecisionPoint {
  std::size_t pages_downloaded = 0;
  std::size_t relevant_pages = 0;
  double precision = 0.0;
};

using PrecisionCurve = std::vector<PrecisionPoint>;

// Point i covers the first i records, using the crawler's own relevant flag.
// Throws Error(kEmptyRun) on empty input.
PrecisionCurve precision_curve(std::span<const CrawlRecord> records);

// Same, but a page counts as relevant when `is_relevant(url)` says so.
PrecisionCurve precision_curve(
    std::span<const CrawlRecord> records,
    const std::function<bool(const std::string&)>& is_relevant);

double final_precision(const PrecisionCurve& curve);

// Mean precision over the points in [begin_fraction, end_fraction) of the
// curve, by index.
double mean_precision(const PrecisionCurve& curve, double begin_fraction,
                      double end_fraction);

// ---------------------------------------------------------------------------
// Synthetic topical web graphs

struct SynthGraphParams {
  std::string topic = "topic";
  std::size_t topic_cluster_size = 300;
  std::size_t offtopic_cluster_size = 600;
  // Off-topic pages between a topic page and each hidden topic cluster.
  std::size_t tunnel_depth = 2;
  std::size_t hidden_clusters = 4;
  std::size_t hidden_cluster_size = 20;
  std::size_t intra_links_per_page = 6;
  std::size_t cross_links_per_page = 3;
  // Links from off-topic pages back into the topic cluster.
  std::size_t offtopic_to_topic_links = 0;
  std::size_t seed_count = 10;
  // Extra off-topic links on each seed page (portal-style entry pages).
  std::size_t entry_offtopic_links = 0;
  // The first `offtopic_hubs` off-topic pages are popular hubs; a cross link
  // from a topic page targets one of them with probability hub_link_share.
  std::size_t offtopic_hubs = 0;
  double hub_link_share = 0.0;
  std::size_t corpus_documents = 10;
  std::size_t title_words = 3;
  std::size_t body_words = 60;
  // Share of topic-vocabulary words in topic pages, off-topic pages and
  // corpus documents.
  double topic_page_topic_share = 0.6;
  double offtopic_page_topic_share = 0.05;
  double corpus_topic_share = 0.8;
  // Probability that an anchor (or URL path) names the target's subject
  // instead of being generic.
  double informative_anchor_rate = 0.5;
  double informative_url_rate = 0.5;
  std::vector<std::string> topic_terms;
  std::vector<std::string> background_terms;
  std::uint64_t rng_seed = 1;
};

// Throws Error(kParamInvalid).
SynthGraphParams parse_graph_params(std::string_view json_text);
SynthGraphParams read_graph_params(const std::filesystem::path& path);
void validate(const SynthGraphParams& params);

struct SynthGraph {
  FixtureManifest manifest;              // seeds and labels included
  std::vector<std::string> corpus;       // topic documents for the weight table
};

// Pure function of params: same params, same graph.
SynthGraph generate_graph(const SynthGraphParams& params);

// graph.json plus corpus files doc000.txt, ... under corpus_dir (if given).
void write_synth_graph(const SynthGraph& graph,
                       const std::filesystem::path& graph_path,
                       const std::optional<std::filesystem::path>& corpus_dir);

// ---------------------------------------------------------------------------
// Focused vs breadth-first comparison

struct ComparisonOptions {
  std::size_t max_pages = 1000;
  int max_level = 2;
  std::size_t table_capacity = 50;
  std::optional<double> relevancy_limit;
  std::vector<std::string> seeds;  // empty: use the graph's seeds
  bool tunnel_relevant_links_to_frontier = false;
};

struct ComparisonInput {
  std::string topic;  // empty: graph topic, else directory name
  std::filesystem::path graph;
  std::filesystem::path topic_dir;
};

struct TopicComparison {
  std::string topic;
  WeightTable table;
  double relevancy_limit = 0.0;
  std::vector<std::string> seeds;
  CrawlResult focused;
  CrawlResult bfs;
  PrecisionCurve focused_curve;
  PrecisionCurve bfs_curve;
  bool labeled = false;  // graph carries ground-truth labels
  PrecisionCurve focused_label_curve;
  PrecisionCurve bfs_label_curve;
};

// Builds the table from the topic directory, then runs both crawlers with
// the same seeds, budget, table and relevancy limit.
TopicComparison run_comparison(const ComparisonInput& input,
                               const ComparisonOptions& options,
                               const Stoplist& stoplist = Stoplist::english());

// Curve CSV header:
// pages_downloaded,relevant_pages,precision,label_relevant_pages,label_precision
void write_curve_csv(std::ostream& out, const PrecisionCurve& curve,
                     const PrecisionCurve* label_curve);

// topic,focused_precision,bfs_precision,focused_label_precision,bfs_label_precision
void write_summary_csv(std::ostream& out, std::span<const TopicComparison> rows);

// Writes summary.csv, run_config.json and per-topic run/curve CSVs.
void write_comparison_report(const std::filesystem::path& out_dir,
                             std::span<const TopicComparison> rows,
                             const ComparisonOptions& options);

}  // namespace focus
