#include "focus/scoring.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "focus/errors.hpp"

namespace focus {

PositionalWeights positional_weights(std::span<const Term> title_terms,
                                     std::span<const Term> body_terms) {
  PositionalWeights weights;
  for (const auto& t : title_terms) weights[t] += kTitleFactor;
  for (const auto& t : body_terms) weights[t] += kBodyFactor;
  return weights;
}

double relevance(const WeightTable& table, const PositionalWeights& page) {
  if (table.empty()) {
    throw Error(ErrorCode::kEmptyTable, "relevance against an empty table");
  }
  double dot = 0.0;
  double page_norm_sq = 0.0;
  for (const auto& [term, w_kp] : page) {
    page_norm_sq += w_kp * w_kp;
    dot += table.weight(term) * w_kp;
  }
  if (dot <= 0.0 || page_norm_sq <= 0.0) return 0.0;
  const double r = dot / std::sqrt(table.norm_squared() * page_norm_sq);
  // Rounding can push a self-cosine a hair past 1.
  return std::min(r, 1.0);
}

double text_score(const WeightTable& table, std::span<const Term> terms) {
  if (terms.empty()) return 0.0;
  return relevance(table, positional_weights({}, terms));
}

LinkScoreParts link_score_parts(const LinkCandidate& candidate,
                                const WeightTable& table) {
  LinkScoreParts parts;
  parts.url = text_score(table, candidate.url_terms);
  parts.anchor = text_score(table, candidate.anchor_terms);
  parts.relevant_inlinks = static_cast<double>(candidate.relevant_inlinks);
  for (const auto& [parent, rel] : candidate.parent_relevances) {
    parts.parents += rel;
  }
  return parts;
}

double link_score(const LinkCandidate& candidate, const WeightTable& table) {
  return link_score_parts(candidate, table).total();
}

std::vector<Term> url_tokens(std::string_view url, const Stoplist& stoplist) {
  // "example" is the RFC 2606 placeholder domain and carries no topic signal.
  static constexpr std::array<std::string_view, 10> kNoise{
      "http", "https", "www", "com", "org",
      "net",  "html",  "htm", "php", "example"};
  std::vector<Term> terms;
  for (const auto& token : tokenize(url)) {
    if (token.size() < 2 || stoplist.contains(token)) continue;
    if (std::find(kNoise.begin(), kNoise.end(), token) != kNoise.end()) continue;
    terms.push_back(stem(token));
  }
  return terms;
}

}  // namespace focus
