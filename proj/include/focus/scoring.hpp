#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "focus/textproc.hpp"
#include "focus/topic.hpp"

namespace focus {

// w_kp per term: 2 per title occurrence, 1 per body occurrence.
using PositionalWeights = std::map<Term, double>;

inline constexpr double kTitleFactor = 2.0;
inline constexpr double kBodyFactor = 1.0;

PositionalWeights positional_weights(std::span<const Term> title_terms,
                                     std::span<const Term> body_terms);

// Cosine between the table vector and the page vector. The page norm runs
// over all page terms, not just those in the table. 0 for an empty page or
// no overlap; throws Error(kEmptyTable) for an empty table.
double relevance(const WeightTable& table, const PositionalWeights& page);

// relevance() over terms that all count as common text.
double text_score(const WeightTable& table, std::span<const Term> terms);

// An unvisited URL and what is known about it so far.
struct LinkCandidate {
  std::string url;
  std::vector<Term> anchor_terms;
  std::vector<Term> url_terms;
  int relevant_inlinks = 0;
  // One entry per distinct parent page URL.
  std::map<std::string, double> parent_relevances;
  int level = 0;

  // Returns false if this parent was already known.
  bool add_parent(const std::string& parent_url, double parent_relevance) {
    return parent_relevances.emplace(parent_url, parent_relevance).second;
  }
};

struct LinkScoreParts {
  double url = 0.0;
  double anchor = 0.0;
  double relevant_inlinks = 0.0;
  double parents = 0.0;

  double total() const { return url + anchor + relevant_inlinks + parents; }
};

LinkScoreParts link_score_parts(const LinkCandidate& candidate,
                                const WeightTable& table);

// URL relevance + anchor relevance + relevant in-link count + sum of parent
// relevances. Raw sum, not normalized.
double link_score(const LinkCandidate& candidate, const WeightTable& table);

// Splits on anything that is not a letter, drops scheme and common host/file
// noise (www, com, html, ...), stopwords and single letters, then stems.
std::vector<Term> url_tokens(std::string_view url, const Stoplist& stoplist);

}  // namespace focus
