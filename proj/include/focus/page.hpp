#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "focus/textproc.hpp"

namespace focus {

struct RawPage {
  std::string url;  // final URL after redirects
  std::string content_type;
  std::string body;
  bool truncated = false;
  std::chrono::system_clock::time_point fetched_at{};
};

struct PageLink {
  std::string url;  // canonical
  std::vector<Term> anchor_terms;
};

struct PageDocument {
  std::string url;
  std::vector<Term> title_terms;
  std::vector<Term> body_terms;
  std::vector<PageLink> links;  // canonical, deduplicated, never the page itself
  TermCounts term_counts;       // title + body
};

// Text-level view of an HTML document before analysis.
struct HtmlText {
  std::string title;
  std::string body;  // visible text; script/style/head content removed
  std::vector<std::pair<std::string, std::string>> anchors;  // (href, text)
  std::string base_href;  // from <base href>, if any
};

// Lenient, browser-style scan: unclosed tags, stray '<' and bad entities are
// tolerated.
HtmlText extract_html(std::string_view html);

bool is_html_content_type(std::string_view content_type);

// Throws Error(kParseFailure) only if the input is not text at all (NUL
// bytes in the first kilobyte).
PageDocument parse_page(const RawPage& raw, const Stoplist& stoplist);

}  // namespace focus
