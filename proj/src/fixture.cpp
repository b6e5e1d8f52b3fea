#include <fstream>
#include <sstream>

#include "json.hpp"

#include "focus/errors.hpp"
#include "focus/fetch.hpp"
#include "focus/url.hpp"

namespace focus {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kManifestInvalid, where + ": " + what);
}

std::string require_string(const json& obj, const char* key,
                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(where + "." + key, "missing");
  if (!it->is_string()) invalid(where + "." + key, "expected a string");
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) invalid(where + "." + key, "expected a string");
  return it->get<std::string>();
}

std::string escape_html(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

const char* to_string(FetchErrorKind kind) {
  switch (kind) {
    case FetchErrorKind::kTimeout: return "timeout";
    case FetchErrorKind::kTooManyRedirects: return "too_many_redirects";
    case FetchErrorKind::kHttpError: return "http_error";
    case FetchErrorKind::kNonHtmlContent: return "non_html_content";
    case FetchErrorKind::kNetwork: return "network";
    case FetchErrorKind::kParse: return "parse";
  }
  return "unknown";
}

FixtureManifest parse_manifest(std::string_view json_text) {
  if (json_text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return {};
  }
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    invalid("graph.json", e.what());
  }
  if (!root.is_object()) invalid("graph.json", "top level must be an object");

  FixtureManifest manifest;
  if (auto topic = optional_string(root, "topic", "graph.json")) {
    manifest.topic = *topic;
  }
  auto pages = root.find("pages");
  if (pages == root.end()) invalid("pages", "missing");
  if (!pages->is_array()) invalid("pages", "expected an array");

  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < pages->size(); ++i) {
    const std::string where = "pages[" + std::to_string(i) + "]";
    const json& p = (*pages)[i];
    if (!p.is_object()) invalid(where, "expected an object");

    FixturePage page;
    const std::string raw_url = require_string(p, "url", where);
    auto url = canonicalize(raw_url);
    if (!url) invalid(where + ".url", "not an absolute http(s) URL: " + raw_url);
    page.url = *url;
    if (auto [it, fresh] = seen.emplace(page.url, i); !fresh) {
      invalid(where + ".url", "duplicate of pages[" + std::to_string(it->second) +
                                  "]: " + page.url);
    }
    page.title = optional_string(p, "title", where).value_or("");
    page.body = optional_string(p, "body", where).value_or("");
    if (auto ct = optional_string(p, "content_type", where)) page.content_type = *ct;

    if (auto redirect = optional_string(p, "redirect", where)) {
      auto target = canonicalize(page.url, *redirect);
      if (!target) invalid(where + ".redirect", "unresolvable: " + *redirect);
      page.redirect = *target;
    }
    if (auto label = optional_string(p, "label", where)) {
      if (*label == "relevant") {
        page.relevant_label = true;
      } else if (*label == "irrelevant") {
        page.relevant_label = false;
      } else {
        invalid(where + ".label", "expected \"relevant\" or \"irrelevant\"");
      }
    }
    if (auto links = p.find("links"); links != p.end() && !links->is_null()) {
      if (!links->is_array()) invalid(where + ".links", "expected an array");
      for (std::size_t j = 0; j < links->size(); ++j) {
        const std::string lwhere = where + ".links[" + std::to_string(j) + "]";
        const json& l = (*links)[j];
        if (!l.is_object()) invalid(lwhere, "expected an object");
        FixtureLink link;
        link.href = require_string(l, "href", lwhere);
        link.anchor = optional_string(l, "anchor", lwhere).value_or("");
        page.links.push_back(std::move(link));
      }
    }
    manifest.pages.push_back(std::move(page));
  }

  if (auto seeds = root.find("seeds"); seeds != root.end() && !seeds->is_null()) {
    if (!seeds->is_array()) invalid("seeds", "expected an array");
    for (std::size_t i = 0; i < seeds->size(); ++i) {
      const std::string where = "seeds[" + std::to_string(i) + "]";
      if (!(*seeds)[i].is_string()) invalid(where, "expected a string");
      auto url = canonicalize((*seeds)[i].get<std::string>());
      if (!url) invalid(where, "not an absolute http(s) URL");
      manifest.seeds.push_back(*url);
    }
  }
  return manifest;
}

FixtureManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

std::string manifest_to_json(const FixtureManifest& manifest) {
  json pages = json::array();
  for (const auto& page : manifest.pages) {
    json p = json::object();
    p["url"] = page.url;
    p["title"] = page.title;
    p["body"] = page.body;
    if (page.content_type != "text/html") p["content_type"] = page.content_type;
    if (page.redirect) p["redirect"] = *page.redirect;
    if (page.relevant_label) {
      p["label"] = *page.relevant_label ? "relevant" : "irrelevant";
    }
    json links = json::array();
    for (const auto& link : page.links) {
      links.push_back(json{{"href", link.href}, {"anchor", link.anchor}});
    }
    p["links"] = std::move(links);
    pages.push_back(std::move(p));
  }
  json root = json::object();
  if (!manifest.topic.empty()) root["topic"] = manifest.topic;
  if (!manifest.seeds.empty()) root["seeds"] = manifest.seeds;
  root["pages"] = std::move(pages);
  return root.dump(1) + "\n";
}

FixtureFetcher::FixtureFetcher(FixtureManifest manifest)
    : manifest_(std::move(manifest)) {
  for (std::size_t i = 0; i < manifest_.pages.size(); ++i) {
    if (!index_.emplace(manifest_.pages[i].url, i).second) {
      throw Error(ErrorCode::kManifestInvalid,
                  "pages[" + std::to_string(i) + "].url: duplicate " +
                      manifest_.pages[i].url);
    }
  }
}

FixtureFetcher FixtureFetcher::load(const std::filesystem::path& path) {
  std::error_code ec;
  const auto file = std::filesystem::is_directory(path, ec) ? path / "graph.json" : path;
  return FixtureFetcher(read_manifest(file));
}

const FixturePage* FixtureFetcher::find(const std::string& url) const {
  auto it = index_.find(url);
  return it == index_.end() ? nullptr : &manifest_.pages[it->second];
}

std::optional<bool> FixtureFetcher::label(const std::string& url) const {
  const FixturePage* page = find(url);
  return page ? page->relevant_label : std::nullopt;
}

std::string FixtureFetcher::render(const FixturePage& page) {
  if (!is_html_content_type(page.content_type)) return page.body;
  std::string html = "<!DOCTYPE html>\n<html><head><title>";
  html += escape_html(page.title);
  html += "</title></head>\n<body>\n<p>";
  html += escape_html(page.body);
  html += "</p>\n";
  for (const auto& link : page.links) {
    html += "<a href=\"";
    html += escape_html(link.href);
    html += "\">";
    html += escape_html(link.anchor);
    html += "</a>\n";
  }
  html += "</body></html>\n";
  return html;
}

RawPage FixtureFetcher::fetch(const std::string& url) {
  std::string current = url;
  for (int hops = 0;; ++hops) {
    const FixturePage* page = find(current);
    if (!page) {
      throw FetchError(FetchErrorKind::kHttpError, "404 " + current, 404);
    }
    if (page->redirect) {
      if (hops == kMaxRedirects) {
        throw FetchError(FetchErrorKind::kTooManyRedirects,
                         "more than " + std::to_string(kMaxRedirects) +
                             " redirects from " + url);
      }
      current = *page->redirect;
      continue;
    }
    if (!is_html_content_type(page->content_type)) {
      throw FetchError(FetchErrorKind::kNonHtmlContent,
                       page->content_type + " at " + current);
    }
    RawPage raw;
    raw.url = page->url;
    raw.content_type = page->content_type;
    raw.body = render(*page);
    return raw;
  }
}

}  // namespace focus
