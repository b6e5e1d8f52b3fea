#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace focus {

// Resolves `href` against `base` (RFC 3986 reference resolution) and
// normalizes the result: lowercase scheme and host, no fragment, no default
// port, "/" for an empty path. Query strings are kept. Returns nullopt for
// non-http(s) schemes and unparseable input.
std::optional<std::string> canonicalize(std::string_view base,
                                        std::string_view href);

// Same, for an already absolute URL.
std::optional<std::string> canonicalize(std::string_view url);

// Lowercased host of a canonical URL, or "" if it has none.
std::string url_host(std::string_view url);

}  // namespace focus
