#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

#include "focus/errors.hpp"
#include "focus/harness.hpp"

using namespace focus;

namespace {

std::vector<CrawlRecord> records_from(const std::vector<bool>& flags) {
  std::vector<CrawlRecord> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    CrawlRecord r;
    r.seq = i + 1;
    r.url = "http://x/" + std::to_string(i);
    r.relevant = flags[i];
    r.relevance = flags[i] ? 0.9 : 0.1;
    out.push_back(r);
  }
  return out;
}

std::optional<ErrorCode> code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

SynthGraphParams small_params(std::uint64_t seed = 3) {
  SynthGraphParams p;
  p.topic = "widgets";
  p.topic_cluster_size = 60;
  p.offtopic_cluster_size = 120;
  p.hidden_clusters = 2;
  p.hidden_cluster_size = 8;
  p.topic_terms = {"widget", "gadget", "sprocket", "gear", "lever", "spring"};
  p.background_terms = {"river", "mountain", "garden", "kitchen", "music", "travel",
                        "weather", "school", "movie", "holiday"};
  p.rng_seed = seed;
  return p;
}

std::filesystem::path params_file(const std::string& name) {
  return testing::data_dir() / "params" / (name + ".json");
}

// Writes graph + corpus for a params file into dir and returns the input.
ComparisonInput materialize(const SynthGraphParams& p, const std::filesystem::path& dir) {
  SynthGraph g = generate_graph(p);
  ComparisonInput in;
  in.graph = dir / "graph.json";
  in.topic_dir = dir / "corpus";
  write_synth_graph(g, in.graph, in.topic_dir);
  return in;
}

// Relevant pages reachable from the seeds without passing an irrelevant page.
std::set<std::string> relevant_closure(const FixtureManifest& m) {
  std::map<std::string, const FixturePage*> by_url;
  for (const auto& p : m.pages) by_url[p.url] = &p;
  std::set<std::string> seen(m.seeds.begin(), m.seeds.end());
  std::vector<std::string> stack(m.seeds.begin(), m.seeds.end());
  std::set<std::string> out;
  while (!stack.empty()) {
    const FixturePage* p = by_url.at(stack.back());
    stack.pop_back();
    if (!p->relevant_label.value_or(false)) continue;
    out.insert(p->url);
    for (const auto& l : p->links) {
      if (by_url.count(l.href) && seen.insert(l.href).second) stack.push_back(l.href);
    }
  }
  return out;
}

bool is_hidden(const std::string& url) { return url.find(".org/") != std::string::npos; }

}  // namespace

TEST_CASE("precision curve arithmetic") {
  PrecisionCurve c = precision_curve(records_from({true, false, true, false}));
  REQUIRE(c.size() == 4);
  CHECK(c[0].precision == 1.0);
  CHECK(c[1].precision == 0.5);
  CHECK(c[2].precision == doctest::Approx(2.0 / 3.0));
  CHECK(c[3].precision == 0.5);
  CHECK(c[3].pages_downloaded == 4);
  CHECK(c[3].relevant_pages == 2);

  for (const auto& p : precision_curve(records_from({true, true, true}))) {
    CHECK(p.precision == 1.0);
  }

  std::vector<bool> flags(1000, false);
  for (std::size_t i = 0; i < 830; ++i) flags[i * 1000 / 830] = true;
  CHECK(final_precision(precision_curve(records_from(flags))) == doctest::Approx(0.83));

  std::vector<CrawlRecord> none;
  CHECK(code_of([&] { precision_curve(none); }) == ErrorCode::kEmptyRun);
  CHECK(code_of([] { final_precision({}); }) == ErrorCode::kEmptyRun);
}

TEST_CASE("precision against labels ignores the crawler's own judgment") {
  auto recs = records_from({true, true, false, false});
  PrecisionCurve c = precision_curve(recs, [](const std::string& u) { return u.back() == '3'; });
  CHECK(c[0].relevant_pages == 0);
  CHECK(c[3].relevant_pages == 1);
  CHECK(c[3].precision == 0.25);
}

TEST_CASE("mean_precision windows") {
  PrecisionCurve c = precision_curve(records_from({true, false, false, false, true,
                                                   true, true, true, true, true}));
  CHECK(mean_precision(c, 0.0, 0.1) == 1.0);
  CHECK(mean_precision(c, 0.8, 1.0) == doctest::Approx((c[8].precision + c[9].precision) / 2));
  CHECK(mean_precision(c, 0.0, 1.0) > 0.0);
  // narrower than a point
  PrecisionCurve one = precision_curve(records_from({false}));
  CHECK(mean_precision(one, 0.0, 0.1) == 0.0);
}

TEST_CASE("property: precision curves are well formed") {
  testing::Gen g(9);
  for (int round = 0; round < 200; ++round) {
    std::vector<bool> flags(1 + g.below(300));
    for (auto&& f : flags) f = g.coin(g.unit());
    PrecisionCurve c = precision_curve(records_from(flags));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      hits += flags[i] ? 1 : 0;
      CHECK(c[i].pages_downloaded == i + 1);
      CHECK(c[i].relevant_pages == hits);
      CHECK(c[i].precision >= 0.0);
      CHECK(c[i].precision <= 1.0);
      CHECK(c[i].precision == static_cast<double>(hits) / static_cast<double>(i + 1));
    }
  }
}

TEST_CASE("generator is a pure function of its params") {
  SynthGraphParams p = small_params();
  const std::string a = manifest_to_json(generate_graph(p).manifest);
  const std::string b = manifest_to_json(generate_graph(p).manifest);
  CHECK(a == b);
  p.rng_seed = 4;
  CHECK(manifest_to_json(generate_graph(p).manifest) != a);
}

TEST_CASE("generated graphs load as fixtures") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SynthGraph g = generate_graph(small_params(seed));
    FixtureManifest back = parse_manifest(manifest_to_json(g.manifest));
    CHECK(back.pages.size() == g.manifest.pages.size());
    CHECK(back.seeds == g.manifest.seeds);
    CHECK(back.seeds.size() == 10);
    std::set<std::string> urls;
    for (const auto& p : back.pages) {
      CHECK(urls.insert(p.url).second);
      CHECK(p.relevant_label.has_value());
    }
    for (const auto& p : back.pages) {
      for (const auto& l : p.links) CHECK(urls.count(l.href));
    }
    CHECK(g.corpus.size() == 10);
  }
}

TEST_CASE("shipped params files are valid") {
  for (const char* name : {"ebusiness", "nanotechnology", "politics", "sports"}) {
    CAPTURE(name);
    SynthGraphParams p = read_graph_params(params_file(name));
    CHECK(p.tunnel_depth == 2);
    CHECK(p.topic_cluster_size + p.offtopic_cluster_size +
              p.hidden_clusters * (p.tunnel_depth + p.hidden_cluster_size) >= 5000);
  }
}

TEST_CASE("tunnel depth shapes the hidden clusters") {
  SynthGraphParams p = small_params();
  p.offtopic_to_topic_links = 0;

  p.tunnel_depth = 2;
  SynthGraph deep = generate_graph(p);
  std::size_t irrelevant = 0;
  for (const auto& page : deep.manifest.pages) irrelevant += page.relevant_label.value_or(false) ? 0 : 1;
  CHECK(irrelevant == p.offtopic_cluster_size + 2 * p.hidden_clusters);
  for (const auto& u : relevant_closure(deep.manifest)) CHECK_FALSE(is_hidden(u));

  p.tunnel_depth = 0;
  SynthGraph flat = generate_graph(p);
  irrelevant = 0;
  for (const auto& page : flat.manifest.pages) irrelevant += page.relevant_label.value_or(false) ? 0 : 1;
  CHECK(irrelevant == p.offtopic_cluster_size);
  std::size_t hidden_reached = 0;
  for (const auto& u : relevant_closure(flat.manifest)) hidden_reached += is_hidden(u) ? 1 : 0;
  CHECK(hidden_reached > 0);
}

TEST_CASE("params validation") {
  auto bad = [](auto mutate) {
    SynthGraphParams p = small_params();
    mutate(p);
    return code_of([&] { validate(p); });
  };
  CHECK_FALSE(bad([](SynthGraphParams&) {}));
  CHECK(bad([](SynthGraphParams& p) { p.topic_cluster_size = 0; }) == ErrorCode::kParamInvalid);
  CHECK(bad([](SynthGraphParams& p) { p.offtopic_cluster_size = 0; }) == ErrorCode::kParamInvalid);
  CHECK(bad([](SynthGraphParams& p) { p.topic_terms.clear(); }) == ErrorCode::kParamInvalid);
  CHECK(bad([](SynthGraphParams& p) { p.corpus_topic_share = 1.5; }) == ErrorCode::kParamInvalid);
  CHECK(bad([](SynthGraphParams& p) { p.hub_link_share = -0.1; }) == ErrorCode::kParamInvalid);
  CHECK(bad([](SynthGraphParams& p) { p.offtopic_hubs = 500; }) == ErrorCode::kParamInvalid);

  CHECK(code_of([] { parse_graph_params("{not json"); }) == ErrorCode::kParamInvalid);
  CHECK(code_of([] { parse_graph_params("[1]"); }) == ErrorCode::kParamInvalid);
  CHECK(code_of([] { parse_graph_params(R"({"topic_cluster_size": "many"})"); }) ==
        ErrorCode::kParamInvalid);
}

TEST_CASE("comparison with a one-page budget") {
  testing::TempDir dir("harness_one_page");
  ComparisonInput in = materialize(small_params(), dir.path());
  ComparisonOptions o;
  o.max_pages = 1;
  TopicComparison r = run_comparison(in, o);
  REQUIRE(r.focused_curve.size() == 1);
  REQUIRE(r.bfs_curve.size() == 1);
  CHECK(r.focused_curve[0].precision == r.bfs_curve[0].precision);
  CHECK(r.focused.records[0].url == r.bfs.records[0].url);
  CHECK(r.topic == "widgets");
  CHECK(r.labeled);
}

TEST_CASE("comparison is fair and the report echoes it") {
  testing::TempDir dir("harness_fair");
  ComparisonInput in = materialize(small_params(), dir.path());
  ComparisonOptions o;
  o.max_pages = 150;
  TopicComparison r = run_comparison(in, o);
  CHECK(r.focused.relevancy_limit == r.bfs.relevancy_limit);
  CHECK(r.focused.records.size() == 150);
  CHECK(r.bfs.records.size() == 150);
  for (std::size_t i = 0; i < r.seeds.size(); ++i) {
    CHECK(r.focused.records[i].url == r.seeds[i]);
    CHECK(r.bfs.records[i].url == r.seeds[i]);
  }

  std::vector<TopicComparison> rows{r};
  write_comparison_report(dir.path() / "report", rows, o);
  auto cfg = nlohmann::json::parse(testing::slurp(dir.path() / "report" / "run_config.json"));
  CHECK(cfg["max_pages"] == 150);
  CHECK(cfg["relevancy_limit"] == "auto");
  const auto& t = cfg["topics"][0];
  CHECK(t["focused_pages"] == t["bfs_pages"]);
  CHECK(t["seeds"].get<std::vector<std::string>>() == r.seeds);
  CHECK(t["table_size"] == r.table.size());

  const std::string curve = testing::slurp(dir.path() / "report" / "widgets_focused_curve.csv");
  CHECK(curve.rfind("pages_downloaded,relevant_pages,precision,label_relevant_pages,label_precision\n", 0) == 0);
  CHECK(curve.find("NA") == std::string::npos);
  const std::string run = testing::slurp(dir.path() / "report" / "widgets_bfs_run.csv");
  CHECK(run.rfind("seq,url,relevance,relevant,via_tunnel,level\n", 0) == 0);
}

TEST_CASE("unlabeled graphs report NA label precision") {
  TopicComparison r;
  r.topic = "x";
  r.focused_curve = precision_curve(records_from({true}));
  r.bfs_curve = precision_curve(records_from({false}));
  std::vector<TopicComparison> rows{r};
  std::ostringstream s;
  write_summary_csv(s, rows);
  CHECK(s.str() ==
        "topic,focused_precision,bfs_precision,focused_label_precision,bfs_label_precision\n"
        "x,1.000000,0.000000,NA,NA\n");
  std::ostringstream c;
  write_curve_csv(c, r.focused_curve, nullptr);
  CHECK(c.str().find("1,1,1.000000,NA,NA\n") != std::string::npos);
}

TEST_CASE("four topics give four summary rows") {
  testing::TempDir dir("harness_four");
  std::vector<TopicComparison> rows;
  ComparisonOptions o;
  o.max_pages = 200;
  for (const char* name : {"ebusiness", "nanotechnology", "politics", "sports"}) {
    ComparisonInput in = materialize(read_graph_params(params_file(name)), dir.path() / name);
    rows.push_back(run_comparison(in, o));
  }
  std::ostringstream s;
  write_summary_csv(s, rows);
  std::istringstream lines(s.str());
  std::string line;
  std::vector<std::string> topics;
  std::getline(lines, line);
  while (std::getline(lines, line)) topics.push_back(line.substr(0, line.find(',')));
  CHECK(topics == std::vector<std::string>{"e-business", "nanotechnology", "politics", "sports"});
}

TEST_CASE("tunneling crosses one irrelevant page, not two") {
  auto hidden_fetched = [](std::size_t depth) {
    SynthGraphParams p = small_params();
    p.tunnel_depth = depth;
    testing::TempDir dir("harness_depth_" + std::to_string(depth));
    ComparisonOptions o;
    o.max_pages = 5000;
    TopicComparison r = run_comparison(materialize(p, dir.path()), o);
    std::size_t n = 0;
    for (const auto& rec : r.focused.records) n += is_hidden(rec.url) && rec.relevant ? 1 : 0;
    return n;
  };
  CHECK(hidden_fetched(1) > 0);
  CHECK(hidden_fetched(2) == 0);
}
