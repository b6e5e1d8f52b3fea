#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "focus/fetch.hpp"
#include "focus/frontier.hpp"
#include "focus/page.hpp"
#include "focus/scoring.hpp"
#include "focus/topic.hpp"

namespace focus {

enum class CrawlMode { kFocused, kBfs };

inline constexpr double kMinAutoRelevancyLimit = 0.3;
inline constexpr double kMaxAutoRelevancyLimit = 0.5;
inline constexpr double kExpansionThreshold = 0.9;

struct CrawlConfig {
  std::vector<std::string> seeds;
  std::size_t max_pages = 1000;
  int max_level = 2;
  std::size_t table_capacity = 50;
  std::optional<double> relevancy_limit;  // nullopt: derive from the seeds
  double expansion_threshold = kExpansionThreshold;
  std::chrono::milliseconds politeness_delay{1000};  // live fetching only
  CrawlMode mode = CrawlMode::kFocused;

  // Follow links of irrelevant pages through the irrelevant table. Off gives
  // a plain best-first crawler that drops them.
  bool tunneling = true;
  // Send out-links of relevant pages found while tunneling to the main
  // frontier instead of back into the irrelevant table.
  bool tunnel_relevant_links_to_frontier = false;
  // Emit a CrawlRecord (relevance 0) for failed fetches so they count as
  // downloaded pages.
  bool count_failures = false;
  // Grow the weight table from highly relevant pages.
  bool expand_table = true;
};

struct CrawlRecord {
  std::size_t seq = 0;  // 1-based fetch ordinal
  std::string url;
  double relevance = 0.0;
  bool relevant = false;
  bool via_tunnel = false;
  int level = 0;
};

struct FetchFailure {
  std::string url;
  FetchErrorKind kind = FetchErrorKind::kNetwork;
  std::string message;
};

struct StoredPage {
  double relevance = 0.0;
  TermCounts terms;
  std::set<std::string> outlinks;
};

class RelevantPageDB {
 public:
  void insert(const std::string& url, StoredPage page);
  bool contains(const std::string& url) const { return pages_.count(url) != 0; }
  const StoredPage* find(const std::string& url) const;
  std::size_t size() const { return pages_.size(); }
  // Insertion order.
  const std::vector<std::string>& urls() const { return order_; }

  // Number of stored pages linking to `url`, by scanning every page.
  int inlink_count(const std::string& url) const;

 private:
  std::unordered_map<std::string, StoredPage> pages_;
  std::vector<std::string> order_;
};

struct CrawlResult {
  std::vector<CrawlRecord> records;
  RelevantPageDB db;
  std::vector<FetchFailure> failures;
  double relevancy_limit = 0.0;
  WeightTable final_table;
};

// Half the mean seed relevance, clamped to [0.3, 0.5]. Throws
// Error(kNoSeedPages) on empty input.
double resolve_relevancy_limit(std::span<const double> seed_relevances);

// Fetching, relevance, recording and the relevant-page database, shared by
// both crawl disciplines.
class CrawlerBase {
 public:
  CrawlerBase(CrawlConfig config, PageSource& source, WeightTable table,
              const Stoplist& stoplist);
  virtual ~CrawlerBase() = default;

  // Fetches the seeds in order and resolves the relevancy limit. Throws
  // Error(kNoSeeds) or Error(kSeedsUnreachable).
  void start();
  // One scheduling step. Returns false once the crawl is finished.
  virtual bool step() = 0;
  CrawlResult run();

  bool started() const { return started_; }
  bool budget_left() const { return records_.size() < config_.max_pages; }
  bool fetched(const std::string& url) const { return fetched_.count(url) != 0; }
  double relevancy_limit() const { return limit_; }
  const WeightTable& table() const { return table_; }
  const std::vector<CrawlRecord>& records() const { return records_; }
  const RelevantPageDB& db() const { return db_; }
  const std::vector<FetchFailure>& failures() const { return failures_; }
  const CrawlConfig& config() const { return config_; }

  double page_relevance(const PageDocument& page) const;

 protected:
  struct FetchOutcome {
    std::optional<PageDocument> page;
    std::optional<FetchFailure> failure;  // neither set: redirect to a fetched URL
  };

  FetchOutcome fetch_page(const std::string& url);
  void record(const std::string& url, double relevance, bool via_tunnel, int level);
  void record_failure(const FetchFailure& failure, bool via_tunnel, int level);
  // Stores the page and grows the table. Returns true if the table changed.
  bool store_relevant(const PageDocument& page, double relevance);

  virtual void on_seed_page(const PageDocument& page, double relevance) = 0;
  virtual void on_table_changed() {}

  CrawlConfig config_;
  PageSource& source_;
  WeightTable table_;
  const Stoplist& stoplist_;
  double limit_ = 0.0;
  bool started_ = false;
  std::unordered_set<std::string> fetched_;
  std::vector<CrawlRecord> records_;
  RelevantPageDB db_;
  std::vector<FetchFailure> failures_;
};

// Best-first crawl on link scores with tunneling through irrelevant
// pages.
//
// A relevant page's out-links go to the frontier. An irrelevant page's
// out-links go to the irrelevant table at level 0, and the table is then
// drained: the best entry is fetched if its level is within max_level; if
// relevant, its out-links enter the table one level deeper (unless it is
// already at max_level); if irrelevant, its same-level siblings with lower
// or equal scores are demoted one level. Every fetch counts against
// max_pages.
class FocusedCrawler : public CrawlerBase {
 public:
  using ScoreOverride = std::function<std::optional<double>(const LinkCandidate&)>;

  FocusedCrawler(CrawlConfig config, PageSource& source, WeightTable table,
                 const Stoplist& stoplist = Stoplist::english());

  // Replaces link_score() for candidates where it returns a value. Used to
  // replay hand-assigned scores.
  void set_score_override(ScoreOverride fn) { override_ = std::move(fn); }

  bool step() override;

  // Registers the page's out-links and files the unqueued, unfetched ones in
  // the irrelevant table at `level`.
  void handle_irrelevant(const PageDocument& page, double relevance, int level);

  // Pops the best irrelevant-table entry and processes it. Returns true if a
  // fetch happened.
  bool tunnel_step();

  // Runs tunnel_step until the table is empty or the budget is spent.
  void drain_tunnel();

  const Frontier& frontier() const { return frontier_; }
  const IrrelevantTable& irrelevant_table() const { return irrelevant_; }
  const LinkCandidate* candidate(const std::string& url) const;
  double score(const LinkCandidate& candidate) const;

 private:
  void on_seed_page(const PageDocument& page, double relevance) override;
  void on_table_changed() override;

  LinkCandidate& register_link(const PageLink& link, const std::string& parent,
                               double parent_relevance, bool parent_relevant);
  void enqueue_frontier(const std::string& url);

  std::unordered_map<std::string, LinkCandidate> candidates_;
  Frontier frontier_;
  IrrelevantTable irrelevant_;
  ScoreOverride override_;
};

// Breadth-first baseline: FIFO over every discovered link, no scoring.
// Pages are still judged by relevance so precision is comparable.
class BfsCrawler : public CrawlerBase {
 public:
  BfsCrawler(CrawlConfig config, PageSource& source, WeightTable table,
             const Stoplist& stoplist = Stoplist::english());

  bool step() override;

 private:
  void on_seed_page(const PageDocument& page, double relevance) override;
  void enqueue_links(const PageDocument& page);

  std::deque<std::string> queue_;
  std::unordered_set<std::string> enqueued_;
};

CrawlResult run_focused(const CrawlConfig& config, PageSource& source,
                        const WeightTable& table,
                        const Stoplist& stoplist = Stoplist::english());
CrawlResult run_bfs(const CrawlConfig& config, PageSource& source,
                    const WeightTable& table,
                    const Stoplist& stoplist = Stoplist::english());
// Dispatches on config.mode.
CrawlResult run_crawl(const CrawlConfig& config, PageSource& source,
                      const WeightTable& table,
                      const Stoplist& stoplist = Stoplist::english());

// Header `seq,url,relevance,relevant,via_tunnel,level`; relevance with 6
// decimals.
void write_records_csv(std::ostream& out, std::span<const CrawlRecord> records);

// One JSON object per line: url, relevance, terms, outlinks.
void write_db_jsonl(std::ostream& out, const RelevantPageDB& db);

}  // namespace focus
