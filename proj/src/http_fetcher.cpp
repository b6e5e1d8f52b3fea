#ifdef FOCUS_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include <thread>

#include "focus/fetch.hpp"
#include "focus/url.hpp"

namespace focus {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string target;  // path[?query]
};

SplitUrl split_origin(const std::string& url) {
  const auto scheme_end = url.find("://");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

FetchError from_httplib(httplib::Error err, const std::string& url) {
  const auto kind = (err == httplib::Error::ConnectionTimeout ||
                     err == httplib::Error::Read)
                        ? FetchErrorKind::kTimeout
                        : FetchErrorKind::kNetwork;
  return FetchError(kind, httplib::to_string(err) + " at " + url);
}

}  // namespace

HttpFetcher::HttpFetcher(HttpFetcherOptions options)
    : options_(std::move(options)) {}

HttpFetcher::~HttpFetcher() = default;

HttpFetcher::HostSlot& HttpFetcher::slot_for(const std::string& host) {
  std::lock_guard<std::mutex> lock(slots_mutex_);
  auto& slot = slots_[host];
  if (!slot) slot = std::make_unique<HostSlot>();
  return *slot;
}

RawPage HttpFetcher::fetch(const std::string& url) {
  std::string current = url;
  for (int hops = 0;; ++hops) {
    if (current.rfind("https://", 0) == 0) {
#ifndef FOCUS_HAVE_OPENSSL
      throw FetchError(FetchErrorKind::kNetwork,
                       "built without TLS support: " + current);
#endif
    }
    HostSlot& slot = slot_for(url_host(current));
    std::unique_lock<std::mutex> host_lock(slot.mutex);
    const auto ready = slot.last_request + options_.politeness_delay;
    if (std::chrono::steady_clock::now() < ready) std::this_thread::sleep_until(ready);

    const SplitUrl parts = split_origin(current);
    httplib::Client client(parts.origin);
    client.set_follow_location(false);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    client.set_write_timeout(options_.timeout);

    std::string body;
    bool truncated = false;
    const httplib::Headers headers{{"User-Agent", options_.user_agent},
                                   {"Accept", "text/html,application/xhtml+xml"}};
    int status = 0;
    std::string location;
    std::string content_type;
    auto result = client.Get(
        parts.target, headers,
        [&](const httplib::Response& head) {
          status = head.status;
          location = head.get_header_value("Location");
          content_type = head.get_header_value("Content-Type");
          // Do not download bodies we are going to discard.
          return status < 300 && is_html_content_type(content_type);
        },
        [&](const char* data, std::size_t len) {
          const std::size_t room = options_.max_body_bytes - body.size();
          if (len > room) {
            body.append(data, room);
            truncated = true;
            return false;
          }
          body.append(data, len);
          return true;
        });
    slot.last_request = std::chrono::steady_clock::now();
    host_lock.unlock();

    // Returning false from either handler surfaces as Canceled.
    if (!result && (status == 0 || result.error() != httplib::Error::Canceled)) {
      throw from_httplib(result.error(), current);
    }

    if (status >= 300 && status < 400 && !location.empty()) {
      if (hops == kMaxRedirects) {
        throw FetchError(FetchErrorKind::kTooManyRedirects,
                         "more than " + std::to_string(kMaxRedirects) +
                             " redirects from " + url);
      }
      auto next = canonicalize(current, location);
      if (!next) {
        throw FetchError(FetchErrorKind::kHttpError,
                         "bad redirect target from " + current, status);
      }
      current = *next;
      continue;
    }
    if (status >= 300) {
      throw FetchError(FetchErrorKind::kHttpError,
                       std::to_string(status) + " " + current, status);
    }
    if (!is_html_content_type(content_type)) {
      throw FetchError(FetchErrorKind::kNonHtmlContent,
                       content_type + " at " + current);
    }

    RawPage raw;
    raw.url = current;
    raw.content_type = content_type;
    raw.body = std::move(body);
    raw.truncated = truncated;
    raw.fetched_at = std::chrono::system_clock::now();
    return raw;
  }
}

}  // namespace focus
