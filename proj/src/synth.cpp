#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "focus/errors.hpp"
#include "focus/harness.hpp"

namespace focus {
namespace {

using nlohmann::json;

// mt19937_64 is fully specified by the standard; the distributions are not,
// so bounded draws are done here to keep graphs identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(engine_()) * static_cast<unsigned __int128>(n);
    return static_cast<std::size_t>(wide >> 64);
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Rank-frequency 1/(rank+1) over a word list.
class ZipfSampler {
 public:
  explicit ZipfSampler(std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += 1.0 / static_cast<double>(i + 1);
      cumulative_.push_back(total);
    }
    for (double& c : cumulative_) c /= total;
  }
  std::size_t draw(Rng& rng) const {
    const double u = rng.unit();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

constexpr std::array<std::string_view, 10> kGenericAnchors{
    "read more", "click here", "details",  "link",     "next page",
    "view",      "info",       "see also", "continue", "more"};

struct Node {
  std::string url;
  std::vector<std::string> title;
  std::string body;
  bool relevant = false;
  std::vector<std::size_t> links;
};

class Generator {
 public:
  explicit Generator(const SynthGraphParams& p)
      : p_(p),
        rng_(p.rng_seed),
        topic_words_(p.topic_terms.size()),
        background_words_(p.background_terms.size()) {}

  SynthGraph run();

 private:
  const std::string& word(bool topic) {
    return topic ? p_.topic_terms[topic_words_.draw(rng_)]
                 : p_.background_terms[background_words_.draw(rng_)];
  }

  std::string text(std::size_t words, double topic_share) {
    std::string out;
    for (std::size_t i = 0; i < words; ++i) {
      if (i) out += ' ';
      out += word(rng_.unit() < topic_share);
    }
    return out;
  }

  std::size_t add_page(const std::string& host, char kind, bool topical,
                       double topic_share) {
    Node n;
    n.relevant = topical;
    for (std::size_t i = 0; i < p_.title_words; ++i) n.title.push_back(word(topical));
    n.body = text(p_.body_words, topic_share);
    const std::size_t id = nodes_.size();
    std::string path = "/";
    if (rng_.unit() < p_.informative_url_rate && !n.title.empty()) {
      path += n.title.front();
      if (n.title.size() > 1) path += "-" + n.title[1];
      path += "/";
    }
    path += kind + std::to_string(id);
    n.url = "http://" + host + path;
    nodes_.push_back(std::move(n));
    return id;
  }

  std::string host(std::string_view tld, std::size_t i) const {
    return "www" + std::to_string(i % 5) + ".example." + std::string(tld);
  }

  // `count` new distinct targets from [first, first + size), never `from`.
  void link_random(std::size_t from, std::size_t first, std::size_t size,
                   std::size_t count) {
    auto& links = nodes_[from].links;
    auto linked = [&](std::size_t to) {
      return to == from || std::find(links.begin(), links.end(), to) != links.end();
    };
    std::size_t open = 0;
    for (std::size_t to = first; to < first + size; ++to) open += linked(to) ? 0 : 1;
    count = std::min(count, open);
    while (count > 0) {
      const std::size_t to = first + rng_.below(size);
      if (linked(to)) continue;
      links.push_back(to);
      --count;
    }
  }

  std::string anchor_for(std::size_t target) {
    const Node& t = nodes_[target];
    if (rng_.unit() < p_.informative_anchor_rate && !t.title.empty()) {
      std::string a = t.title.front();
      if (t.title.size() > 1 && rng_.unit() < 0.5) a += " " + t.title[1];
      return a;
    }
    return std::string(kGenericAnchors[rng_.below(kGenericAnchors.size())]);
  }

  const SynthGraphParams& p_;
  Rng rng_;
  ZipfSampler topic_words_;
  ZipfSampler background_words_;
  std::vector<Node> nodes_;
};

SynthGraph Generator::run() {
  const std::size_t topic_first = 0;
  for (std::size_t i = 0; i < p_.topic_cluster_size; ++i) {
    add_page(host("com", i), 'p', true, p_.topic_page_topic_share);
  }
  const std::size_t off_first = nodes_.size();
  for (std::size_t i = 0; i < p_.offtopic_cluster_size; ++i) {
    add_page(host("net", i), 'q', false, p_.offtopic_page_topic_share);
  }

  struct Hidden {
    std::vector<std::size_t> chain;
    std::size_t first = 0;
  };
  std::vector<Hidden> hidden(p_.hidden_clusters);
  for (std::size_t k = 0; k < p_.hidden_clusters; ++k) {
    for (std::size_t d = 0; d < p_.tunnel_depth; ++d) {
      hidden[k].chain.push_back(
          add_page(host("net", k + d), 't', false, p_.offtopic_page_topic_share));
    }
    hidden[k].first = nodes_.size();
    for (std::size_t i = 0; i < p_.hidden_cluster_size; ++i) {
      add_page(host("org", k + i), 'h', true, p_.topic_page_topic_share);
    }
  }

  const std::size_t hubs = std::min(p_.offtopic_hubs, p_.offtopic_cluster_size);
  auto cross_links = [&](std::size_t id, std::size_t count) {
    for (std::size_t c = 0; c < count; ++c) {
      if (hubs && rng_.unit() < p_.hub_link_share) {
        link_random(id, off_first, hubs, 1);
      } else {
        link_random(id, off_first, p_.offtopic_cluster_size, 1);
      }
    }
  };
  for (std::size_t i = 0; i < p_.topic_cluster_size; ++i) {
    const std::size_t id = topic_first + i;
    link_random(id, topic_first, p_.topic_cluster_size, p_.intra_links_per_page);
    std::size_t count = p_.cross_links_per_page;
    if (i < p_.seed_count) count += p_.entry_offtopic_links;
    cross_links(id, count);
  }
  for (std::size_t i = 0; i < p_.offtopic_cluster_size; ++i) {
    const std::size_t id = off_first + i;
    link_random(id, off_first, p_.offtopic_cluster_size, p_.intra_links_per_page);
    if (p_.topic_cluster_size) {
      link_random(id, topic_first, p_.topic_cluster_size, p_.offtopic_to_topic_links);
    }
  }
  constexpr std::size_t kTunnelEntrances = 2;
  constexpr std::size_t kTunnelExits = 3;
  for (const Hidden& h : hidden) {
    if (p_.hidden_cluster_size == 0) continue;
    // The first page of the path from the topic cluster into this cluster.
    const std::size_t entry = h.chain.empty() ? h.first : h.chain.front();
    for (std::size_t e = 0; e < kTunnelEntrances && p_.topic_cluster_size; ++e) {
      auto& links = nodes_[topic_first + rng_.below(p_.topic_cluster_size)].links;
      if (std::find(links.begin(), links.end(), entry) == links.end()) {
        links.push_back(entry);
      }
    }
    for (std::size_t d = 0; d < h.chain.size(); ++d) {
      const std::size_t id = h.chain[d];
      if (d + 1 < h.chain.size()) {
        nodes_[id].links.push_back(h.chain[d + 1]);
      } else {
        link_random(id, h.first, p_.hidden_cluster_size, kTunnelExits);
      }
      if (p_.offtopic_cluster_size) {
        link_random(id, off_first, p_.offtopic_cluster_size, p_.cross_links_per_page);
      }
    }
    for (std::size_t i = 0; i < p_.hidden_cluster_size; ++i) {
      const std::size_t id = h.first + i;
      link_random(id, h.first, p_.hidden_cluster_size, p_.intra_links_per_page);
      if (p_.offtopic_cluster_size) {
        link_random(id, off_first, p_.offtopic_cluster_size, p_.cross_links_per_page);
      }
    }
  }

  SynthGraph graph;
  graph.manifest.topic = p_.topic;
  for (std::size_t i = 0; i < std::min(p_.seed_count, p_.topic_cluster_size); ++i) {
    graph.manifest.seeds.push_back(nodes_[topic_first + i].url);
  }
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    FixturePage page;
    page.url = n.url;
    for (std::size_t w = 0; w < n.title.size(); ++w) {
      if (w) page.title += ' ';
      page.title += n.title[w];
    }
    page.body = n.body;
    page.relevant_label = n.relevant;
    for (std::size_t to : n.links) {
      page.links.push_back(FixtureLink{nodes_[to].url, anchor_for(to)});
    }
    graph.manifest.pages.push_back(std::move(page));
  }
  for (std::size_t d = 0; d < p_.corpus_documents; ++d) {
    graph.corpus.push_back(text(2 * p_.body_words, p_.corpus_topic_share) + "\n");
  }
  return graph;
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kParamInvalid, std::string(key) + ": wrong type");
  }
}

}  // namespace

void validate(const SynthGraphParams& p) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kParamInvalid, what);
  };
  if (p.topic_cluster_size == 0) fail("topic_cluster_size must be >= 1");
  if (p.offtopic_cluster_size == 0) fail("offtopic_cluster_size must be >= 1");
  if (p.seed_count == 0) fail("seed_count must be >= 1");
  if (p.corpus_documents == 0) fail("corpus_documents must be >= 1");
  if (p.body_words == 0) fail("body_words must be >= 1");
  if (p.offtopic_hubs > p.offtopic_cluster_size) {
    fail("offtopic_hubs must not exceed offtopic_cluster_size");
  }
  if (p.topic_terms.empty()) fail("topic_terms must not be empty");
  if (p.background_terms.empty()) fail("background_terms must not be empty");
  for (double share : {p.topic_page_topic_share, p.offtopic_page_topic_share,
                       p.corpus_topic_share, p.informative_anchor_rate, p.hub_link_share,
                       p.informative_url_rate}) {
    if (!(share >= 0.0 && share <= 1.0)) fail("shares and rates must lie in [0, 1]");
  }
}

SynthGraphParams parse_graph_params(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParamInvalid, e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParamInvalid, "expected an object");
  SynthGraphParams p;
  read_field(j, "topic", p.topic);
  read_field(j, "topic_cluster_size", p.topic_cluster_size);
  read_field(j, "offtopic_cluster_size", p.offtopic_cluster_size);
  read_field(j, "tunnel_depth", p.tunnel_depth);
  read_field(j, "hidden_clusters", p.hidden_clusters);
  read_field(j, "hidden_cluster_size", p.hidden_cluster_size);
  read_field(j, "intra_links_per_page", p.intra_links_per_page);
  read_field(j, "cross_links_per_page", p.cross_links_per_page);
  read_field(j, "offtopic_to_topic_links", p.offtopic_to_topic_links);
  read_field(j, "seed_count", p.seed_count);
  read_field(j, "entry_offtopic_links", p.entry_offtopic_links);
  read_field(j, "offtopic_hubs", p.offtopic_hubs);
  read_field(j, "hub_link_share", p.hub_link_share);
  read_field(j, "corpus_documents", p.corpus_documents);
  read_field(j, "title_words", p.title_words);
  read_field(j, "body_words", p.body_words);
  read_field(j, "topic_page_topic_share", p.topic_page_topic_share);
  read_field(j, "offtopic_page_topic_share", p.offtopic_page_topic_share);
  read_field(j, "corpus_topic_share", p.corpus_topic_share);
  read_field(j, "informative_anchor_rate", p.informative_anchor_rate);
  read_field(j, "informative_url_rate", p.informative_url_rate);
  read_field(j, "topic_terms", p.topic_terms);
  read_field(j, "background_terms", p.background_terms);
  read_field(j, "rng_seed", p.rng_seed);
  validate(p);
  return p;
}

SynthGraphParams read_graph_params(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_params(buf.str());
}

SynthGraph generate_graph(const SynthGraphParams& params) {
  validate(params);
  return Generator(params).run();
}

void write_synth_graph(const SynthGraph& graph,
                       const std::filesystem::path& graph_path,
                       const std::optional<std::filesystem::path>& corpus_dir) {
  namespace fs = std::filesystem;
  if (graph_path.has_parent_path()) fs::create_directories(graph_path.parent_path());
  {
    std::ofstream out(graph_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + graph_path.string());
    out << manifest_to_json(graph.manifest);
  }
  if (!corpus_dir) return;
  fs::create_directories(*corpus_dir);
  for (std::size_t i = 0; i < graph.corpus.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "doc%03zu.txt", i);
    std::ofstream out(*corpus_dir / name, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write corpus file " + std::string(name));
    out << graph.corpus[i];
  }
}

}  // namespace focus
