#include "focus/crawl.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "json.hpp"

#include "focus/errors.hpp"
#include "focus/url.hpp"

namespace focus {

// ---------------------------------------------------------------------------
// RelevantPageDB

void RelevantPageDB::insert(const std::string& url, StoredPage page) {
  if (pages_.emplace(url, std::move(page)).second) order_.push_back(url);
}

const StoredPage* RelevantPageDB::find(const std::string& url) const {
  auto it = pages_.find(url);
  return it == pages_.end() ? nullptr : &it->second;
}

int RelevantPageDB::inlink_count(const std::string& url) const {
  int n = 0;
  for (const auto& [page_url, page] : pages_) n += page.outlinks.count(url) ? 1 : 0;
  return n;
}

double resolve_relevancy_limit(std::span<const double> seed_relevances) {
  if (seed_relevances.empty()) {
    throw Error(ErrorCode::kNoSeedPages, "no seed page was fetched");
  }
  const double mean =
      std::accumulate(seed_relevances.begin(), seed_relevances.end(), 0.0) /
      static_cast<double>(seed_relevances.size());
  return std::clamp(mean / 2.0, kMinAutoRelevancyLimit, kMaxAutoRelevancyLimit);
}

// ---------------------------------------------------------------------------
// CrawlerBase

CrawlerBase::CrawlerBase(CrawlConfig config, PageSource& source,
                         WeightTable table, const Stoplist& stoplist)
    : config_(std::move(config)),
      source_(source),
      table_(std::move(table)),
      stoplist_(stoplist) {
  if (table_.empty()) throw Error(ErrorCode::kEmptyTable, "weight table is empty");
  if (config_.max_pages == 0) {
    throw Error(ErrorCode::kConfig, "max_pages must be positive");
  }
  if (config_.max_level < 0) {
    throw Error(ErrorCode::kConfig, "max_level must be non-negative");
  }
  if (config_.relevancy_limit &&
      !(*config_.relevancy_limit >= 0.0 && *config_.relevancy_limit <= 1.0)) {
    throw Error(ErrorCode::kConfig, "relevancy limit must lie in [0, 1]");
  }
}

double CrawlerBase::page_relevance(const PageDocument& page) const {
  return relevance(table_, positional_weights(page.title_terms, page.body_terms));
}

CrawlerBase::FetchOutcome CrawlerBase::fetch_page(const std::string& url) {
  fetched_.insert(url);
  FetchOutcome out;
  RawPage raw;
  try {
    raw = source_.fetch(url);
  } catch (const FetchError& e) {
    out.failure = FetchFailure{url, e.kind(), e.what()};
    return out;
  }
  if (raw.url != url && !fetched_.insert(raw.url).second) return out;
  try {
    out.page = parse_page(raw, stoplist_);
  } catch (const Error& e) {
    out.failure = FetchFailure{url, FetchErrorKind::kParse, e.what()};
  }
  return out;
}

void CrawlerBase::record(const std::string& url, double relevance,
                         bool via_tunnel, int level) {
  CrawlRecord r;
  r.seq = records_.size() + 1;
  r.url = url;
  r.relevance = relevance;
  r.relevant = relevance >= limit_;
  r.via_tunnel = via_tunnel;
  r.level = level;
  records_.push_back(std::move(r));
}

void CrawlerBase::record_failure(const FetchFailure& failure, bool via_tunnel,
                                 int level) {
  failures_.push_back(failure);
  if (!config_.count_failures) return;
  CrawlRecord r;
  r.seq = records_.size() + 1;
  r.url = failure.url;
  r.via_tunnel = via_tunnel;
  r.level = level;
  records_.push_back(std::move(r));
}

bool CrawlerBase::store_relevant(const PageDocument& page, double relevance) {
  StoredPage stored;
  stored.relevance = relevance;
  stored.terms = page.term_counts;
  for (const auto& link : page.links) stored.outlinks.insert(link.url);
  db_.insert(page.url, std::move(stored));

  if (!config_.expand_table) return false;
  WeightTable grown = expand_table(table_, page.term_counts, relevance,
                                   config_.expansion_threshold);
  if (grown.size() == table_.size()) return false;
  table_ = std::move(grown);
  on_table_changed();
  return true;
}

void CrawlerBase::start() {
  if (started_) return;
  started_ = true;
  if (config_.seeds.empty()) throw Error(ErrorCode::kNoSeeds, "no seed URLs");

  std::vector<std::string> seeds;
  for (const auto& s : config_.seeds) {
    auto url = canonicalize(s);
    if (!url) throw Error(ErrorCode::kConfig, "invalid seed URL: " + s);
    if (std::find(seeds.begin(), seeds.end(), *url) == seeds.end()) {
      seeds.push_back(*url);
    }
  }

  // Records wait until the limit is known; keep them in fetch order.
  struct SeedOutcome {
    std::optional<PageDocument> page;
    double relevance = 0.0;
    std::optional<FetchFailure> failure;
  };
  std::vector<SeedOutcome> outcomes;
  std::size_t pending_records = 0;
  for (const auto& seed : seeds) {
    if (pending_records >= config_.max_pages) break;
    if (fetched(seed)) continue;
    FetchOutcome fetched_seed = fetch_page(seed);
    SeedOutcome o;
    if (fetched_seed.page) {
      o.relevance = page_relevance(*fetched_seed.page);
      o.page = std::move(fetched_seed.page);
      ++pending_records;
    } else if (fetched_seed.failure) {
      o.failure = std::move(fetched_seed.failure);
      if (config_.count_failures) ++pending_records;
    } else {
      continue;
    }
    outcomes.push_back(std::move(o));
  }

  std::vector<double> seed_relevances;
  for (const auto& o : outcomes) {
    if (o.page) seed_relevances.push_back(o.relevance);
  }
  if (seed_relevances.empty()) {
    for (const auto& o : outcomes) {
      if (o.failure) failures_.push_back(*o.failure);
    }
    throw Error(ErrorCode::kSeedsUnreachable, "none of the seed URLs could be fetched");
  }
  limit_ = config_.relevancy_limit ? *config_.relevancy_limit
                                   : resolve_relevancy_limit(seed_relevances);

  for (const auto& o : outcomes) {
    if (o.failure) {
      record_failure(*o.failure, false, 0);
      continue;
    }
    record(o.page->url, o.relevance, false, 0);
    if (o.relevance >= limit_) store_relevant(*o.page, o.relevance);
    on_seed_page(*o.page, o.relevance);
  }
}

CrawlResult CrawlerBase::run() {
  start();
  while (step()) {
  }
  CrawlResult result;
  result.records = records_;
  result.db = db_;
  result.failures = failures_;
  result.relevancy_limit = limit_;
  result.final_table = table_;
  return result;
}

// ---------------------------------------------------------------------------
// FocusedCrawler

FocusedCrawler::FocusedCrawler(CrawlConfig config, PageSource& source,
                               WeightTable table, const Stoplist& stoplist)
    : CrawlerBase(std::move(config), source, std::move(table), stoplist) {}

const LinkCandidate* FocusedCrawler::candidate(const std::string& url) const {
  auto it = candidates_.find(url);
  return it == candidates_.end() ? nullptr : &it->second;
}

double FocusedCrawler::score(const LinkCandidate& c) const {
  if (override_) {
    if (auto s = override_(c)) return *s;
  }
  return link_score(c, table_);
}

LinkCandidate& FocusedCrawler::register_link(const PageLink& link,
                                             const std::string& parent,
                                             double parent_relevance,
                                             bool parent_relevant) {
  auto [it, fresh] = candidates_.try_emplace(link.url);
  LinkCandidate& c = it->second;
  if (fresh) {
    c.url = link.url;
    c.url_terms = url_tokens(link.url, stoplist_);
  }
  if (c.anchor_terms.empty()) c.anchor_terms = link.anchor_terms;
  const bool new_parent = c.add_parent(parent, parent_relevance);
  if (new_parent && parent_relevant) ++c.relevant_inlinks;

  const double s = score(c);
  frontier_.rescore(c.url, s);
  irrelevant_.rescore(c.url, s);
  return c;
}

void FocusedCrawler::enqueue_frontier(const std::string& url) {
  if (fetched(url) || frontier_.contains(url)) return;
  const LinkCandidate& c = candidates_.at(url);
  // A URL reachable from a relevant page lives in the frontier only.
  irrelevant_.erase(url);
  frontier_.push(url, score(c));
}

void FocusedCrawler::on_seed_page(const PageDocument& page, double relevance) {
  const bool relevant = relevance >= limit_;
  for (const auto& link : page.links) {
    register_link(link, page.url, relevance, relevant);
    enqueue_frontier(link.url);
  }
}

void FocusedCrawler::on_table_changed() {
  for (const auto& url : frontier_.urls()) {
    frontier_.rescore(url, score(candidates_.at(url)));
  }
  for (const auto& url : irrelevant_.urls()) {
    irrelevant_.rescore(url, score(candidates_.at(url)));
  }
}

void FocusedCrawler::handle_irrelevant(const PageDocument& page,
                                       double relevance, int level) {
  for (const auto& link : page.links) {
    const LinkCandidate& c = register_link(link, page.url, relevance, false);
    if (fetched(link.url) || frontier_.contains(link.url) ||
        irrelevant_.contains(link.url)) {
      continue;
    }
    irrelevant_.push(link.url, score(c), level);
  }
}

bool FocusedCrawler::tunnel_step() {
  auto popped = irrelevant_.pop();
  if (!popped) return false;
  const QueueEntry umax = std::move(*popped);
  if (umax.level > config_.max_level || fetched(umax.url)) return false;

  FetchOutcome outcome = fetch_page(umax.url);
  if (!outcome.page) {
    if (outcome.failure) record_failure(*outcome.failure, true, umax.level);
    return false;
  }
  const PageDocument& page = *outcome.page;
  const double rel = page_relevance(page);
  record(page.url, rel, true, umax.level);

  if (rel < limit_) {
    for (const auto& link : page.links) register_link(link, page.url, rel, false);
    demote_siblings(irrelevant_, umax);
    return true;
  }

  store_relevant(page, rel);
  for (const auto& link : page.links) {
    const LinkCandidate& c = register_link(link, page.url, rel, true);
    if (fetched(link.url)) continue;
    if (config_.tunnel_relevant_links_to_frontier) {
      enqueue_frontier(link.url);
    } else if (umax.level < config_.max_level && !frontier_.contains(link.url)) {
      irrelevant_.push(link.url, score(c), umax.level + 1);
    }
  }
  return true;
}

void FocusedCrawler::drain_tunnel() {
  while (!irrelevant_.empty() && budget_left()) tunnel_step();
}

bool FocusedCrawler::step() {
  if (!started_) start();
  if (!budget_left()) return false;

  if (frontier_.empty()) {
    if (irrelevant_.empty()) return false;
    drain_tunnel();
    return true;
  }

  const QueueEntry next = *frontier_.pop();
  if (fetched(next.url)) return true;
  FetchOutcome outcome = fetch_page(next.url);
  if (!outcome.page) {
    if (outcome.failure) record_failure(*outcome.failure, false, 0);
    return true;
  }
  const PageDocument& page = *outcome.page;
  const double rel = page_relevance(page);
  record(page.url, rel, false, 0);

  if (rel >= limit_) {
    store_relevant(page, rel);
    for (const auto& link : page.links) {
      register_link(link, page.url, rel, true);
      enqueue_frontier(link.url);
    }
    return true;
  }

  if (config_.tunneling) {
    handle_irrelevant(page, rel, 0);
    drain_tunnel();
  } else {
    for (const auto& link : page.links) register_link(link, page.url, rel, false);
  }
  return true;
}

// ---------------------------------------------------------------------------
// BfsCrawler

BfsCrawler::BfsCrawler(CrawlConfig config, PageSource& source, WeightTable table,
                       const Stoplist& stoplist)
    : CrawlerBase(std::move(config), source, std::move(table), stoplist) {}

void BfsCrawler::enqueue_links(const PageDocument& page) {
  for (const auto& link : page.links) {
    if (fetched(link.url) || !enqueued_.insert(link.url).second) continue;
    queue_.push_back(link.url);
  }
}

void BfsCrawler::on_seed_page(const PageDocument& page, double) {
  enqueued_.insert(page.url);
  enqueue_links(page);
}

bool BfsCrawler::step() {
  if (!started_) start();
  if (!budget_left() || queue_.empty()) return false;

  const std::string url = std::move(queue_.front());
  queue_.pop_front();
  if (fetched(url)) return true;
  FetchOutcome outcome = fetch_page(url);
  if (!outcome.page) {
    if (outcome.failure) record_failure(*outcome.failure, false, 0);
    return true;
  }
  const PageDocument& page = *outcome.page;
  const double rel = page_relevance(page);
  record(page.url, rel, false, 0);
  if (rel >= limit_) store_relevant(page, rel);
  enqueue_links(page);
  return true;
}

// ---------------------------------------------------------------------------

CrawlResult run_focused(const CrawlConfig& config, PageSource& source,
                        const WeightTable& table, const Stoplist& stoplist) {
  FocusedCrawler crawler(config, source, table, stoplist);
  return crawler.run();
}

CrawlResult run_bfs(const CrawlConfig& config, PageSource& source,
                    const WeightTable& table, const Stoplist& stoplist) {
  BfsCrawler crawler(config, source, table, stoplist);
  return crawler.run();
}

CrawlResult run_crawl(const CrawlConfig& config, PageSource& source,
                      const WeightTable& table, const Stoplist& stoplist) {
  return config.mode == CrawlMode::kBfs ? run_bfs(config, source, table, stoplist)
                                        : run_focused(config, source, table, stoplist);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_records_csv(std::ostream& out, std::span<const CrawlRecord> records) {
  out << "seq,url,relevance,relevant,via_tunnel,level\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& r : records) {
    out << r.seq << ',' << csv_field(r.url) << ',' << r.relevance << ','
        << (r.relevant ? "true" : "false") << ','
        << (r.via_tunnel ? "true" : "false") << ',' << r.level << '\n';
  }
}

void write_db_jsonl(std::ostream& out, const RelevantPageDB& db) {
  for (const auto& url : db.urls()) {
    const StoredPage* page = db.find(url);
    nlohmann::json j = nlohmann::json::object();
    j["url"] = url;
    j["relevance"] = page->relevance;
    j["terms"] = page->terms;
    j["outlinks"] = page->outlinks;
    out << j.dump() << '\n';
  }
}

}  // namespace focus
