#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "focus/page.hpp"

namespace focus {

enum class FetchErrorKind {
  kTimeout,
  kTooManyRedirects,
  kHttpError,
  kNonHtmlContent,
  kNetwork,
  kParse,
};

const char* to_string(FetchErrorKind kind);

// A per-URL failure. The crawl records it and moves on.
class FetchError : public std::runtime_error {
 public:
  FetchError(FetchErrorKind kind, const std::string& what, int status = 0)
      : std::runtime_error(what), kind_(kind), status_(status) {}

  FetchErrorKind kind() const { return kind_; }
  int status() const { return status_; }

 private:
  FetchErrorKind kind_;
  int status_;
};

inline constexpr int kMaxRedirects = 5;

class PageSource {
 public:
  virtual ~PageSource() = default;
  // `url` is canonical. Throws FetchError.
  virtual RawPage fetch(const std::string& url) = 0;
};

// ---------------------------------------------------------------------------
// Fixture graphs (graph.json)

struct FixtureLink {
  std::string href;
  std::string anchor;
};

struct FixturePage {
  std::string url;  // canonical
  std::string title;
  std::string body;
  std::vector<FixtureLink> links;
  std::optional<std::string> redirect;  // canonical target
  std::optional<bool> relevant_label;
  std::string content_type = "text/html";
};

struct FixtureManifest {
  std::vector<FixturePage> pages;
  std::vector<std::string> seeds;  // optional top-level "seeds"
  std::string topic;               // optional top-level "topic"
};

// Throws Error(kManifestInvalid) with the offending field path, e.g.
// "pages[3].links[0].href: expected a string".
FixtureManifest parse_manifest(std::string_view json_text);
FixtureManifest read_manifest(const std::filesystem::path& path);
std::string manifest_to_json(const FixtureManifest& manifest);

// Serves a fixture manifest. Lookups are pure, so concurrent fetches are safe.
class FixtureFetcher : public PageSource {
 public:
  explicit FixtureFetcher(FixtureManifest manifest);

  // `path` is a graph.json file or a directory containing one.
  static FixtureFetcher load(const std::filesystem::path& path);

  RawPage fetch(const std::string& url) override;

  std::size_t page_count() const { return manifest_.pages.size(); }
  const FixtureManifest& manifest() const { return manifest_; }
  const FixturePage* find(const std::string& url) const;

  // Generator ground truth; nullopt when the page is unknown or unlabeled.
  std::optional<bool> label(const std::string& url) const;

  // The HTML document served for a page.
  static std::string render(const FixturePage& page);

 private:
  FixtureManifest manifest_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Live HTTP

struct HttpFetcherOptions {
  std::string user_agent = "focuscrawl/0.1";
  std::chrono::seconds timeout{10};
  std::chrono::milliseconds politeness_delay{1000};
  std::size_t max_body_bytes = 2 * 1024 * 1024;
};

// Follows up to kMaxRedirects redirects. Requests to one host are serialized
// and spaced by politeness_delay.
class HttpFetcher : public PageSource {
 public:
  explicit HttpFetcher(HttpFetcherOptions options = {});
  ~HttpFetcher() override;

  RawPage fetch(const std::string& url) override;

 private:
  struct HostSlot {
    std::mutex mutex;
    std::chrono::steady_clock::time_point last_request{};
  };
  HostSlot& slot_for(const std::string& host);

  HttpFetcherOptions options_;
  std::mutex slots_mutex_;
  std::map<std::string, std::unique_ptr<HostSlot>> slots_;
};

}  // namespace focus
