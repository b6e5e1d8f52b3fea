// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

#include "focus/crawl.hpp"
#include "focus/errors.hpp"
#include "focus/focus.h"
#include "focus/harness.hpp"

using namespace focus;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failed = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++g_failed;
  std::printf("%s criterion %d: %s [%.2fs] %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              secs, o.detail.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string last_segment(const std::string& url) {
  return url.substr(url.find_last_of('/') + 1);
}

std::filesystem::path gated_dir() { return testing::data_dir() / "fixtures" / "gated"; }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome table_replay() {
  const auto t0 = Clock::now();
  FixtureFetcher f = FixtureFetcher::load(gated_dir());
  CrawlConfig cfg;
  cfg.seeds = {"http://gated.test/s"};
  cfg.max_level = 2;
  FocusedCrawler c(cfg, f, load_table(gated_dir() / "table.tsv"));
  const std::map<std::string, double> scores{{"a", 2}, {"b", 3}, {"c", 5}, {"d", 1},
                                             {"e", 4}, {"f", 0.9}, {"g", 0.8}, {"h", 0.7}};
  c.set_score_override([&](const LinkCandidate& lc) -> std::optional<double> {
    auto it = scores.find(last_segment(lc.url));
    if (it == scores.end()) return std::nullopt;
    return it->second;
  });
  c.start();

  using Rows = std::vector<std::tuple<std::string, double, int>>;
  auto rows = [&] {
    Rows out;
    for (const auto& e : c.irrelevant_table().ordered()) {
      out.emplace_back(last_segment(e.url), e.score, e.level);
    }
    return out;
  };
  auto show = [](const Rows& r) {
    std::string s;
    for (const auto& [u, sc, lv] : r) s += "(" + u + "," + fmt("%g", sc) + "," + std::to_string(lv) + ")";
    return s;
  };

  const PageDocument p = parse_page(f.fetch("http://gated.test/p"), Stoplist::english());
  c.handle_irrelevant(p, c.page_relevance(p), 0);
  const Rows initial = rows();
  if (initial != Rows{{"c", 5, 0}, {"e", 4, 0}, {"b", 3, 0}, {"a", 2, 0}, {"d", 1, 0}}) {
    return {false, "initial table " + show(initial)};
  }

  // c, then e: both relevant, their links enter one level down
  if (!c.tunnel_step() || last_segment(c.records().back().url) != "c" || !c.records().back().relevant) {
    return {false, "c was not fetched as a relevant page"};
  }
  if (!c.tunnel_step() || last_segment(c.records().back().url) != "e" || !c.records().back().relevant) {
    return {false, "e was not fetched as a relevant page"};
  }
  const Rows after_ce = rows();
  if (after_ce != Rows{{"b", 3, 0}, {"a", 2, 0}, {"d", 1, 0}, {"f", 0.9, 1}, {"g", 0.8, 1}, {"h", 0.7, 1}}) {
    return {false, "after c,e " + show(after_ce)};
  }

  // b is irrelevant: a and d drop to level 1
  if (!c.tunnel_step() || last_segment(c.records().back().url) != "b" || c.records().back().relevant) {
    return {false, "b was not fetched as an irrelevant page"};
  }
  const Rows after_b = rows();
  if (after_b != Rows{{"a", 2, 1}, {"d", 1, 1}, {"f", 0.9, 1}, {"g", 0.8, 1}, {"h", 0.7, 1}}) {
    return {false, "after b " + show(after_b)};
  }
  const double secs = seconds_since(t0);
  return {secs < 1.0, "trace " + show(initial) + " -> " + show(after_ce) + " -> " + show(after_b)};
}

Outcome tunneling_reach() {
  const auto t0 = Clock::now();
  FixtureFetcher f = FixtureFetcher::load(gated_dir());
  const WeightTable table = load_table(gated_dir() / "table.tsv");
  auto run = [&](int level) {
    CrawlConfig cfg;
    cfg.seeds = {"http://gated.test/s"};
    cfg.max_level = level;
    cfg.max_pages = 100;
    return run_focused(cfg, f, table);
  };
  const std::set<std::string> expected{"c", "e", "f", "g"};
  std::string detail;
  for (int level : {2, 3}) {
    CrawlResult r = run(level);
    std::set<std::string> got;
    for (const auto& rec : r.records) {
      if (rec.relevant && last_segment(rec.url) != "s") got.insert(last_segment(rec.url));
      if (rec.relevant && !r.db.contains(rec.url)) return {false, rec.url + " not stored"};
    }
    if (got != expected) {
      std::string s;
      for (const auto& g : got) s += g + " ";
      return {false, "maxLevel " + std::to_string(level) + " relevant set: " + s};
    }
  }
  detail = "maxLevel 2,3 -> {c,e,f,g}";
  CrawlResult r0 = run(0);
  for (const auto& rec : r0.records) {
    const std::string n = last_segment(rec.url);
    if (n == "f" || n == "g") return {false, "maxLevel 0 fetched " + n};
  }
  detail += "; maxLevel 0 fetches neither f nor g";
  return {seconds_since(t0) < 1.0, detail};
}

struct Synthetic {
  TopicComparison row;
  double seconds = 0.0;
};

const Synthetic& synthetic_run() {
  static const Synthetic s = [] {
    Synthetic out;
    const auto t0 = Clock::now();
    testing::TempDir dir("acceptance_synthetic");
    SynthGraphParams p = read_graph_params(testing::data_dir() / "params" / "ebusiness.json");
    SynthGraph g = generate_graph(p);
    ComparisonInput in;
    in.graph = dir.path() / "graph.json";
    in.topic_dir = dir.path() / "corpus";
    write_synth_graph(g, in.graph, in.topic_dir);
    ComparisonOptions o;
    o.max_pages = 1000;
    out.row = run_comparison(in, o);
    out.seconds = seconds_since(t0);
    return out;
  }();
  return s;
}

Outcome synthetic_comparison() {
  const Synthetic& s = synthetic_run();
  const TopicComparison& r = s.row;
  if (!r.labeled) return {false, "graph carries no labels"};
  const double fl = final_precision(r.focused_label_curve);
  const double bl = final_precision(r.bfs_label_curve);
  const double fe = final_precision(r.focused_curve);
  const double be = final_precision(r.bfs_curve);
  const double ratio = bl > 0 ? fl / bl : INFINITY;
  // both runs must spend the whole budget, or the ratio compares different lengths
  const bool pass = ratio >= 1.5 && fe > be && s.seconds < 30.0 &&
                    r.focused.records.size() == 1000 && r.bfs.records.size() == 1000;
  return {pass, fmt("label precision %.3f vs %.3f (x%.2f); self-judged %.3f", fl, bl, ratio, fe) +
                    fmt(" vs %.3f; %g pages each", be,
                        static_cast<double>(r.focused.records.size()))};
}

Outcome curve_shape() {
  const PrecisionCurve& c = synthetic_run().row.focused_curve;
  const double early = mean_precision(c, 0.0, 0.1);
  const double late = mean_precision(c, 0.8, 1.0);
  return {late > early, fmt("first 10%% mean %.3f, last 20%% mean %.3f", early, late)};
}

// Cosine by the book, over the union of terms.
long double cosine_oracle(const std::map<std::string, double>& table,
                          const std::vector<std::string>& title,
                          const std::vector<std::string>& body) {
  std::map<std::string, long double> page;
  for (const auto& t : title) page[t] += 2;
  for (const auto& t : body) page[t] += 1;
  std::set<std::string> terms;
  for (const auto& [t, w] : table) terms.insert(t);
  for (const auto& [t, w] : page) terms.insert(t);
  long double dot = 0, nt = 0, np = 0;
  for (const auto& t : terms) {
    const long double a = table.count(t) ? table.at(t) : 0.0L;
    const long double b = page.count(t) ? page.at(t) : 0.0L;
    dot += a * b;
    nt += a * a;
    np += b * b;
  }
  if (dot == 0) return 0;
  return dot / (std::sqrt(nt) * std::sqrt(np));
}

std::map<std::string, double> random_table(testing::Gen& g, const std::vector<std::string>& vocab) {
  std::map<std::string, double> t;
  const std::size_t n = 1 + g.below(30);
  for (std::size_t i = 0; i < n; ++i) t[g.pick(vocab)] = 0.01 + 0.99 * g.unit();
  // scaled so the largest weight is 1, as built tables are
  double mx = 0;
  for (auto& [k, v] : t) mx = std::max(mx, v);
  for (auto& [k, v] : t) v /= mx;
  return t;
}

std::vector<std::string> random_terms(testing::Gen& g, const std::vector<std::string>& vocab,
                                      std::size_t max) {
  std::vector<std::string> out(g.below(max + 1));
  for (auto& t : out) t = g.pick(vocab);
  return out;
}

Outcome relevance_oracle() {
  testing::Gen g(3141);
  std::vector<std::string> vocab;
  for (int i = 0; i < 80; ++i) vocab.push_back(g.word(3, 7));
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_table(g, vocab);
    const auto title = random_terms(g, vocab, 6);
    const auto body = random_terms(g, vocab, 120);
    const WeightTable table(std::map<Term, double>(t.begin(), t.end()), 50);
    const double got = relevance(table, positional_weights(title, body));
    const long double want = cosine_oracle(t, title, body);
    if (!(got >= 0.0 && got <= 1.0)) return {false, fmt("out of range: %.17g", got)};
    worst = std::max(worst, static_cast<double>(std::fabs(got - want)));
  }
  return {worst <= 1e-12, fmt("1000 pairs, max deviation %.3g", worst)};
}

Outcome link_score_decomposition() {
  testing::Gen g(2718);
  std::vector<std::string> vocab;
  for (int i = 0; i < 60; ++i) vocab.push_back(g.word(3, 7));
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto t = random_table(g, vocab);
    const WeightTable table(std::map<Term, double>(t.begin(), t.end()), 50);
    LinkCandidate c;
    c.url = "http://x/" + std::to_string(i);
    c.url_terms = random_terms(g, vocab, 8);
    c.anchor_terms = random_terms(g, vocab, 5);
    c.relevant_inlinks = static_cast<int>(g.below(6));
    const std::size_t parents = g.below(5);
    long double parent_sum = 0;
    for (std::size_t k = 0; k < parents; ++k) {
      const double r = g.unit();
      if (c.add_parent("http://p/" + std::to_string(k), r)) parent_sum += r;
    }
    const long double want = cosine_oracle(t, {}, c.url_terms) +
                             cosine_oracle(t, {}, c.anchor_terms) + c.relevant_inlinks + parent_sum;
    const double got = link_score(c, table);
    worst = std::max(worst, static_cast<double>(std::fabs(got - want)));

    LinkCandidate more = c;
    more.relevant_inlinks += 1;
    if (!(link_score(more, table) > got)) return {false, "not monotone in relevant in-links"};
    more = c;
    more.add_parent("http://p/extra", g.unit());
    if (!(link_score(more, table) >= got)) return {false, "not monotone in parents"};
    if (!c.parent_relevances.empty()) {
      more = c;
      more.parent_relevances.begin()->second += 0.25;
      if (!(link_score(more, table) > got)) return {false, "not monotone in parent relevance"};
    }
  }
  return {worst <= 1e-12, fmt("200 candidates, max deviation %.3g; monotone", worst)};
}

Outcome weight_table_fidelity() {
  testing::TempDir dir("acceptance_table");
  // raw tf*df: busi 20*5, manag 29*2, solut 9*5, corpor 17*2, custom 9*3
  struct Spec {
    const char* word;
    std::vector<int> per_doc;
  };
  const std::vector<Spec> spec{
      {"business", {4, 4, 4, 4, 4}},
      {"management", {15, 14, 0, 0, 0}},
      {"solutions", {2, 2, 2, 2, 1}},
      {"corporation", {0, 0, 9, 8, 0}},
      {"customer", {3, 0, 3, 0, 3}},
  };
  for (int d = 0; d < 5; ++d) {
    std::string text;
    for (const auto& s : spec) {
      for (int k = 0; k < s.per_doc[d]; ++k) text += std::string(s.word) + " ";
    }
    testing::spit(dir.path() / ("doc" + std::to_string(d) + ".txt"), text);
  }
  const WeightTable t = build_topic_table(dir.path(), "business", 50, Stoplist::english());
  const std::vector<std::pair<std::string, double>> want{
      {"busi", 1.0}, {"manag", 0.58}, {"solut", 0.45}, {"corpor", 0.34}, {"custom", 0.27}};
  std::string detail;
  bool pass = t.size() == want.size();
  double mx = 0;
  for (const auto& [term, w] : want) {
    const double got = t.weight(term);
    mx = std::max(mx, got);
    detail += term + "=" + fmt("%.2f ", got);
    if (std::round(got * 100) != std::round(w * 100)) pass = false;
  }
  pass = pass && mx == 1.0 && t.weight("busi") == 1.0;
  return {pass, detail + "; max exactly 1.0"};
}

Outcome compare_determinism() {
  testing::TempDir dir("acceptance_determinism");
  std::vector<std::string> graphs, corpora;
  for (const char* name : {"ebusiness", "nanotechnology", "politics", "sports"}) {
    const auto params = testing::data_dir() / "params" / (std::string(name) + ".json");
    const auto g = dir.path() / name / "graph.json";
    const auto corpus = dir.path() / name / "corpus";
    if (fc_generate_graph(params.c_str(), 0, 0, g.c_str(), corpus.c_str()) != FC_OK) {
      return {false, std::string("gen-graph: ") + fc_last_error()};
    }
    graphs.push_back(g.string());
    corpora.push_back(corpus.string());
  }
  std::vector<const char*> gp, cp;
  for (const auto& s : graphs) gp.push_back(s.c_str());
  for (const auto& s : corpora) cp.push_back(s.c_str());
  fc_compare_options o;
  fc_compare_options_init(&o);
  for (const char* out : {"run1", "run2"}) {
    if (fc_compare(gp.data(), cp.data(), gp.size(), &o, (dir.path() / out).c_str()) != FC_OK) {
      return {false, std::string("compare: ") + fc_last_error()};
    }
  }
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir.path() / "run1")) {
    const auto other = dir.path() / "run2" / entry.path().filename();
    if (!std::filesystem::exists(other)) return {false, "missing " + other.string()};
    if (testing::slurp(entry.path()) != testing::slurp(other)) {
      return {false, entry.path().filename().string() + " differs"};
    }
    ++files;
  }
  return {files >= 17, std::to_string(files) + " report files byte-identical"};
}

// Counts every fetch so a repeated URL cannot hide behind the crawler's own
// bookkeeping.
class CountingSource : public PageSource {
 public:
  explicit CountingSource(FixtureFetcher inner) : inner_(std::move(inner)) {}
  RawPage fetch(const std::string& url) override {
    ++counts_[url];
    return inner_.fetch(url);
  }
  const std::map<std::string, int>& counts() const { return counts_; }

 private:
  FixtureFetcher inner_;
  std::map<std::string, int> counts_;
};

Outcome dedup_and_budget() {
  testing::Gen g(99);
  const SynthGraphParams base = read_graph_params(testing::data_dir() / "params" / "politics.json");
  std::size_t runs = 0, fetches = 0, tunnel_fetches = 0;
  for (int i = 0; i < 60; ++i) {
    SynthGraphParams p = base;
    p.rng_seed = g.engine()();
    p.topic_cluster_size = 10 + g.below(120);
    p.offtopic_cluster_size = 10 + g.below(200);
    p.offtopic_hubs = g.below(std::min<std::size_t>(p.offtopic_cluster_size, 10));
    p.hub_link_share = g.unit();
    p.tunnel_depth = g.below(4);
    p.hidden_clusters = g.below(4);
    p.hidden_cluster_size = g.below(15);
    p.intra_links_per_page = g.below(8);
    p.cross_links_per_page = g.below(5);
    p.offtopic_to_topic_links = g.below(3);
    p.seed_count = 1 + g.below(10);
    SynthGraph graph = generate_graph(p);

    testing::TempDir corpus_dir("acceptance_dedup_corpus");
    write_synth_graph(graph, corpus_dir.path() / "graph.json", corpus_dir.path() / "corpus");
    const WeightTable table = build_topic_table(corpus_dir.path() / "corpus", p.topic, 50,
                                                Stoplist::english());

    CrawlConfig cfg;
    cfg.seeds = graph.manifest.seeds;
    cfg.max_pages = 1 + g.below(400);
    cfg.max_level = static_cast<int>(g.below(4));
    cfg.tunnel_relevant_links_to_frontier = g.coin(0.3);
    cfg.count_failures = g.coin(0.3);
    if (g.coin()) cfg.relevancy_limit = g.range(0.05, 0.6);
    cfg.mode = g.coin(0.25) ? CrawlMode::kBfs : CrawlMode::kFocused;

    CountingSource source{FixtureFetcher(graph.manifest)};
    CrawlResult r = run_crawl(cfg, source, table);
    ++runs;
    if (r.records.size() > cfg.max_pages) {
      return {false, fmt("run %g: %g records over budget %g", i, r.records.size(), cfg.max_pages)};
    }
    std::set<std::string> seen;
    for (const auto& rec : r.records) {
      if (!seen.insert(rec.url).second) return {false, "recorded twice: " + rec.url};
      if (rec.via_tunnel) {
        ++tunnel_fetches;
        if (rec.level > cfg.max_level) return {false, "tunnel fetch beyond max_level: " + rec.url};
      }
    }
    for (const auto& [url, n] : source.counts()) {
      if (n > 1) return {false, "fetched twice: " + url};
      ++fetches;
    }
  }
  return {runs >= 50, std::to_string(runs) + " graphs, " + std::to_string(fetches) +
                          " fetches (" + std::to_string(tunnel_fetches) + " tunneled)"};
}

}  // namespace

int main() {
  report(1, "irrelevant-table replay with injected scores", table_replay);
  report(2, "tunneling reach on the gated fixture", tunneling_reach);
  report(3, "focused beats breadth-first on a synthetic graph", synthetic_comparison);
  report(4, "focused precision rises over the run", curve_shape);
  report(5, "relevance matches a brute-force cosine", relevance_oracle);
  report(6, "link score is the sum of its parts and monotone", link_score_decomposition);
  report(7, "weight table normalization", weight_table_fidelity);
  report(8, "compare is deterministic", compare_determinism);
  report(9, "no refetch, budget respected, tunnel depth bounded", dedup_and_budget);
  std::printf("%d of 9 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
