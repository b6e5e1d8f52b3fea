#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "focus/errors.hpp"
#include "focus/scoring.hpp"

using namespace focus;
using V = std::vector<Term>;

namespace {

const WeightTable& table_one() {
  static const WeightTable t({{"busi", 1.0}, {"manag", 0.58}, {"solut", 0.45},
                              {"corpor", 0.34}, {"custom", 0.27}},
                             50);
  return t;
}

// Cosine written out longhand over parallel arrays.
double cosine_oracle(const WeightTable& table, const PositionalWeights& page) {
  std::vector<std::string> keys;
  for (const auto& [k, w] : table.entries()) keys.push_back(k);
  for (const auto& [k, w] : page) keys.push_back(k);
  long double dot = 0, nt = 0, np = 0;
  for (const auto& [k, w] : table.entries()) nt += static_cast<long double>(w) * w;
  for (const auto& [k, w] : page) np += static_cast<long double>(w) * w;
  for (const auto& [k, w] : table.entries()) {
    auto it = page.find(k);
    if (it != page.end()) dot += static_cast<long double>(w) * it->second;
  }
  if (np == 0 || dot == 0) return 0.0;
  return static_cast<double>(dot / std::sqrt(nt * np));
}

}  // namespace

TEST_CASE("positional weights: title counts double") {
  CHECK(positional_weights(V{"busi"}, V{"busi", "busi"}) == PositionalWeights{{"busi", 4.0}});
  CHECK(positional_weights(V{}, V{}).empty());
  CHECK(positional_weights(V{"a", "b"}, V{"b"}) == PositionalWeights{{"a", 2.0}, {"b", 3.0}});
}

TEST_CASE("relevance examples") {
  const WeightTable t({{"a", 1.0}, {"b", 0.5}}, 2);
  CHECK(relevance(t, {{"a", 2.0}, {"c", 1.0}}) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(relevance(t, {{"a", 1.0}, {"b", 0.5}}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(relevance(t, {{"x", 3.0}}) == 0.0);
  CHECK(relevance(t, {}) == 0.0);
  try {
    relevance(WeightTable{}, {{"a", 1.0}});
    FAIL("expected EmptyTable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyTable);
  }
}

TEST_CASE("text_score") {
  const WeightTable ones({{"busi", 1.0}, {"manag", 1.0}}, 2);
  CHECK(text_score(ones, V{"busi", "manag"}) == doctest::Approx(1.0));
  CHECK(text_score(ones, V{}) == 0.0);
  const V anchor{"busi", "manag", "solut"};
  CHECK(text_score(table_one(), anchor) ==
        doctest::Approx(cosine_oracle(table_one(), {{"busi", 1}, {"manag", 1}, {"solut", 1}}))
            .epsilon(1e-12));
}

TEST_CASE("link score is the raw sum of four parts") {
  LinkCandidate empty;
  empty.add_parent("http://p/", 0.0);
  CHECK(link_score(empty, table_one()) == 0.0);

  // Anchor ["busi"] against a one-term table scores exactly 1.
  const WeightTable t({{"busi", 1.0}}, 1);
  LinkCandidate c;
  c.anchor_terms = {"busi"};
  c.url_terms = {"busi", "zzz"};
  c.relevant_inlinks = 2;
  c.add_parent("http://p1/", 0.8);
  c.add_parent("http://p2/", 0.5);
  CHECK_FALSE(c.add_parent("http://p1/", 0.9));  // one entry per parent page
  const LinkScoreParts parts = link_score_parts(c, t);
  CHECK(parts.anchor == doctest::Approx(1.0));
  CHECK(parts.url == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(parts.relevant_inlinks == 2.0);
  CHECK(parts.parents == doctest::Approx(1.3));
  CHECK(link_score(c, t) == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0) + 2.0 + 1.3));
}

TEST_CASE("url_tokens") {
  const Stoplist& en = Stoplist::english();
  CHECK(url_tokens("http://www.e-business-solutions.com/customer.html", en) ==
        V{"busi", "solut", "custom"});
  CHECK(url_tokens("http://example.com/", en).empty());
  CHECK(url_tokens("https://shop.org/index.php?cat=management&id=42", en) ==
        V{"shop", "index", "cat", "manag", "id"});
}

TEST_CASE("property: relevance lies in [0,1], matches the oracle and ignores page scale") {
  testing::Gen g(1);
  const std::vector<Term> vocab{"busi", "manag", "solut", "corpor", "custom",
                                "care", "market", "onlin", "retail", "price"};
  for (int round = 0; round < 500; ++round) {
    std::map<Term, double> entries;
    for (const auto& t : vocab) {
      if (g.coin(0.5)) entries[t] = g.range(1e-3, 1.0);
    }
    if (entries.empty()) entries["busi"] = 1.0;
    const WeightTable table(entries, 50);
    PositionalWeights page;
    for (const auto& t : vocab) {
      if (g.coin(0.4)) page[t] = static_cast<double>(1 + g.below(12));
    }
    const double r = relevance(table, page);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    CHECK(r == doctest::Approx(cosine_oracle(table, page)).epsilon(1e-12));
    PositionalWeights scaled = page;
    const double c = g.range(0.1, 50.0);
    for (auto& [k, w] : scaled) w *= c;
    CHECK(relevance(table, scaled) == doctest::Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("property: a title occurrence adds 2, a body occurrence adds 1") {
  testing::Gen g(2);
  const std::vector<Term> vocab{"a1", "b2", "c3", "d4"};
  for (int round = 0; round < 200; ++round) {
    V title, body;
    for (int i = 0; i < 5; ++i) title.push_back(g.pick(vocab));
    for (int i = 0; i < 10; ++i) body.push_back(g.pick(vocab));
    const PositionalWeights base = positional_weights(title, body);
    const Term k = g.pick(vocab);
    V title2 = title, body2 = body;
    title2.push_back(k);
    body2.push_back(k);
    const double w = base.count(k) ? base.at(k) : 0.0;
    CHECK(positional_weights(title2, body).at(k) == w + 2.0);
    CHECK(positional_weights(title, body2).at(k) == w + 1.0);
  }
}

TEST_CASE("property: link score is monotone in in-links and parent relevance") {
  testing::Gen g(4);
  for (int round = 0; round < 200; ++round) {
    LinkCandidate c;
    c.anchor_terms = {g.coin() ? "busi" : "other"};
    c.url_terms = {g.coin() ? "manag" : "thing"};
    c.relevant_inlinks = static_cast<int>(g.below(5));
    for (int p = 0; p < 3; ++p) c.add_parent("http://p" + std::to_string(p) + "/", g.unit());
    const double s = link_score(c, table_one());
    LinkCandidate more = c;
    ++more.relevant_inlinks;
    CHECK(link_score(more, table_one()) > s);
    LinkCandidate higher = c;
    higher.parent_relevances["http://p0/"] = std::min(1.0, c.parent_relevances["http://p0/"] + 0.1);
    CHECK(link_score(higher, table_one()) >= s);
    const LinkScoreParts parts = link_score_parts(c, table_one());
    for (double part : {parts.url, parts.anchor, parts.relevant_inlinks, parts.parents}) {
      CHECK(s >= part);
    }
  }
}
