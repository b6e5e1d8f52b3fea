#include "focus/url.hpp"

#include <cctype>

namespace focus {
namespace {

struct UrlParts {
  std::string scheme;
  bool has_authority = false;
  std::string authority;
  std::string path;
  bool has_query = false;
  std::string query;
};

bool valid_scheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  return true;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Splits per the RFC 3986 appendix B grammar. The fragment is dropped.
UrlParts split(std::string_view ref) {
  UrlParts parts;
  if (auto hash = ref.find('#'); hash != std::string_view::npos) {
    ref = ref.substr(0, hash);
  }
  const auto colon = ref.find(':');
  const auto delim = ref.find_first_of("/?");
  if (colon != std::string_view::npos &&
      (delim == std::string_view::npos || colon < delim) &&
      valid_scheme(ref.substr(0, colon))) {
    parts.scheme = lower(ref.substr(0, colon));
    ref = ref.substr(colon + 1);
  }
  if (ref.substr(0, 2) == "//") {
    parts.has_authority = true;
    ref = ref.substr(2);
    const auto end = ref.find_first_of("/?");
    parts.authority = std::string(ref.substr(0, end));
    ref = end == std::string_view::npos ? std::string_view{} : ref.substr(end);
  }
  if (auto q = ref.find('?'); q != std::string_view::npos) {
    parts.has_query = true;
    parts.query = std::string(ref.substr(q + 1));
    ref = ref.substr(0, q);
  }
  parts.path = std::string(ref);
  return parts;
}

std::string remove_dot_segments(std::string_view in) {
  std::string input(in);
  std::string output;
  while (!input.empty()) {
    if (input.rfind("../", 0) == 0) {
      input.erase(0, 3);
    } else if (input.rfind("./", 0) == 0) {
      input.erase(0, 2);
    } else if (input.rfind("/./", 0) == 0) {
      input.erase(0, 2);
    } else if (input == "/.") {
      input = "/";
    } else if (input.rfind("/../", 0) == 0 || input == "/..") {
      input = input.size() == 3 ? std::string("/") : input.substr(3);
      const auto slash = output.rfind('/');
      output.erase(slash == std::string::npos ? 0 : slash);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      const auto next = input.find('/', input[0] == '/' ? 1 : 0);
      output.append(input, 0, next);
      input.erase(0, next == std::string::npos ? input.size() : next);
    }
  }
  return output;
}

std::string merge_paths(const UrlParts& base, std::string_view ref_path) {
  if (base.has_authority && base.path.empty()) return "/" + std::string(ref_path);
  const auto slash = base.path.rfind('/');
  if (slash == std::string::npos) return std::string(ref_path);
  return base.path.substr(0, slash + 1) + std::string(ref_path);
}

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

// Percent-encodes bytes that may not appear literally and uppercases the hex
// digits of existing escapes.
std::string normalize_escapes(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c == '%' && i + 2 < s.size() && is_hex(s[i + 1]) && is_hex(s[i + 2])) {
      out += '%';
      out += static_cast<char>(std::toupper(static_cast<unsigned char>(s[i + 1])));
      out += static_cast<char>(std::toupper(static_cast<unsigned char>(s[i + 2])));
      i += 2;
    } else if (c <= 0x20 || c >= 0x7f || c == '"' || c == '<' || c == '>' ||
               c == '\\' || c == '^' || c == '`' || c == '{' || c == '|' ||
               c == '}' || c == '%') {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xf];
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::optional<std::string> normalize_authority(std::string_view authority,
                                               std::string_view scheme) {
  std::string userinfo;
  if (auto at = authority.rfind('@'); at != std::string_view::npos) {
    userinfo = std::string(authority.substr(0, at + 1));
    authority = authority.substr(at + 1);
  }
  std::string_view host = authority;
  std::string_view port;
  const auto bracket = authority.rfind(']');
  const auto colon = authority.rfind(':');
  if (colon != std::string_view::npos &&
      (bracket == std::string_view::npos || colon > bracket)) {
    host = authority.substr(0, colon);
    port = authority.substr(colon + 1);
  }
  if (host.empty()) return std::nullopt;
  for (char c : host) {
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u >= 0x7f || c == '/' || c == '\\' || c == '%') {
      return std::nullopt;
    }
  }
  for (char c : port) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  }
  while (port.size() > 1 && port.front() == '0') port.remove_prefix(1);
  std::string out = userinfo + lower(host);
  const bool default_port = port.empty() || (scheme == "http" && port == "80") ||
                            (scheme == "https" && port == "443");
  if (!default_port) {
    out += ':';
    out += port;
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f");
  std::string out;
  // Browsers also drop embedded tabs and newlines.
  for (char c : s.substr(first, last - first + 1)) {
    if (c != '\t' && c != '\n' && c != '\r') out += c;
  }
  return out;
}

std::optional<std::string> finish(const UrlParts& target) {
  if (target.scheme != "http" && target.scheme != "https") return std::nullopt;
  if (!target.has_authority) return std::nullopt;
  auto authority = normalize_authority(target.authority, target.scheme);
  if (!authority) return std::nullopt;

  std::string path = normalize_escapes(remove_dot_segments(target.path));
  if (path.empty()) path = "/";
  std::string out = target.scheme + "://" + *authority + path;
  if (target.has_query) {
    out += '?';
    out += normalize_escapes(target.query);
  }
  return out;
}

}  // namespace

std::optional<std::string> canonicalize(std::string_view base,
                                        std::string_view href) {
  const std::string ref_text = trim(href);
  const UrlParts ref = split(ref_text);
  if (!ref.scheme.empty()) {
    if (ref.scheme != "http" && ref.scheme != "https") return std::nullopt;
    return finish(ref);
  }

  const std::string base_text = trim(base);
  const UrlParts b = split(base_text);
  if (b.scheme.empty() || !b.has_authority) return std::nullopt;

  UrlParts target;
  target.scheme = b.scheme;
  if (ref.has_authority) {
    target.has_authority = true;
    target.authority = ref.authority;
    target.path = ref.path;
    target.has_query = ref.has_query;
    target.query = ref.query;
  } else {
    target.has_authority = true;
    target.authority = b.authority;
    if (ref.path.empty()) {
      target.path = b.path;
      target.has_query = ref.has_query || b.has_query;
      target.query = ref.has_query ? ref.query : b.query;
    } else {
      target.path = ref.path.front() == '/' ? ref.path : merge_paths(b, ref.path);
      target.has_query = ref.has_query;
      target.query = ref.query;
    }
  }
  return finish(target);
}

std::optional<std::string> canonicalize(std::string_view url) {
  const std::string text = trim(url);
  const UrlParts parts = split(text);
  if (parts.scheme.empty()) return std::nullopt;
  return finish(parts);
}

std::string url_host(std::string_view url) {
  const UrlParts parts = split(url);
  if (!parts.has_authority) return {};
  std::string_view authority = parts.authority;
  if (auto at = authority.rfind('@'); at != std::string_view::npos) {
    authority = authority.substr(at + 1);
  }
  const auto colon = authority.rfind(':');
  const auto bracket = authority.rfind(']');
  if (colon != std::string_view::npos &&
      (bracket == std::string_view::npos || colon > bracket)) {
    authority = authority.substr(0, colon);
  }
  return lower(authority);
}

}  // namespace focus
