#include "focus/page.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <unordered_set>

#include "focus/errors.hpp"
#include "focus/url.hpp"

namespace focus {
namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' ||
         c == '_';
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void append_utf8(std::string& out, unsigned long cp) {
  if (cp == 0 || cp > 0x10FFFF) cp = 0xFFFD;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Decodes the common named entities and numeric references. Anything else
// is kept verbatim.
std::string decode_entities(std::string_view s) {
  struct Named {
    std::string_view name;
    unsigned long cp;
  };
  static constexpr std::array<Named, 10> kNamed{{
      {"amp", '&'},
      {"lt", '<'},
      {"gt", '>'},
      {"quot", '"'},
      {"apos", '\''},
      {"nbsp", 0xA0},
      {"copy", 0xA9},
      {"reg", 0xAE},
      {"mdash", 0x2014},
      {"ndash", 0x2013},
  }};

  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    const auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out += '&';
      continue;
    }
    std::string_view ref = s.substr(i + 1, semi - i - 1);
    std::optional<unsigned long> cp;
    if (!ref.empty() && ref[0] == '#') {
      const bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
      std::string_view digits = ref.substr(hex ? 2 : 1);
      if (!digits.empty()) {
        unsigned long v = 0;
        bool ok = true;
        for (char c : digits) {
          const int d = std::isdigit(static_cast<unsigned char>(c))
                            ? c - '0'
                            : (hex && std::isxdigit(static_cast<unsigned char>(c))
                                   ? std::tolower(static_cast<unsigned char>(c)) - 'a' + 10
                                   : -1);
          if (d < 0) {
            ok = false;
            break;
          }
          v = v * (hex ? 16 : 10) + static_cast<unsigned long>(d);
          if (v > 0x10FFFF) v = 0x110000;
        }
        if (ok) cp = v;
      }
    } else {
      for (const auto& n : kNamed) {
        if (n.name == ref) cp = n.cp;
      }
    }
    if (!cp) {
      out += '&';
      continue;
    }
    append_utf8(out, *cp);
    i = semi;
  }
  return out;
}

struct Tag {
  std::string name;  // lowercase
  bool closing = false;
  std::vector<std::pair<std::string, std::string>> attrs;

  std::optional<std::string> attr(std::string_view key) const {
    for (const auto& [k, v] : attrs) {
      if (k == key) return v;
    }
    return std::nullopt;
  }
};

// Parses a tag starting at html[pos] == '<'. Returns the position after the
// closing '>' (or the end of input).
std::size_t parse_tag(std::string_view html, std::size_t pos, Tag& tag) {
  std::size_t i = pos + 1;
  if (i < html.size() && html[i] == '/') {
    tag.closing = true;
    ++i;
  }
  const std::size_t name_start = i;
  while (i < html.size() && is_name_char(html[i])) ++i;
  tag.name = lower(html.substr(name_start, i - name_start));

  while (i < html.size() && html[i] != '>') {
    if (is_space(html[i]) || html[i] == '/') {
      ++i;
      continue;
    }
    const std::size_t key_start = i;
    while (i < html.size() && !is_space(html[i]) && html[i] != '=' &&
           html[i] != '>' && html[i] != '/') {
      ++i;
    }
    std::string key = lower(html.substr(key_start, i - key_start));
    while (i < html.size() && is_space(html[i])) ++i;
    std::string value;
    if (i < html.size() && html[i] == '=') {
      ++i;
      while (i < html.size() && is_space(html[i])) ++i;
      if (i < html.size() && (html[i] == '"' || html[i] == '\'')) {
        const char quote = html[i++];
        const auto end = html.find(quote, i);
        const auto stop = end == std::string_view::npos ? html.size() : end;
        value = decode_entities(html.substr(i, stop - i));
        i = end == std::string_view::npos ? html.size() : end + 1;
      } else {
        const std::size_t v_start = i;
        while (i < html.size() && !is_space(html[i]) && html[i] != '>') ++i;
        value = decode_entities(html.substr(v_start, i - v_start));
      }
    }
    if (!key.empty()) tag.attrs.emplace_back(std::move(key), std::move(value));
  }
  return i < html.size() ? i + 1 : html.size();
}

// Tags that do not break words when they open or close.
bool is_inline_tag(std::string_view name) {
  static const std::unordered_set<std::string_view> kInline{
      "a",   "abbr", "b",    "big",  "cite", "code", "em",     "font",
      "i",   "kbd",  "mark", "q",    "s",    "samp", "small",  "span",
      "strike", "strong", "sub", "sup", "tt", "u", "var"};
  return kInline.count(name) != 0;
}

// Skips to just past `</name ...>`, case-insensitively.
std::size_t skip_raw_text(std::string_view html, std::size_t pos,
                          std::string_view name, std::string* captured) {
  std::size_t i = pos;
  while (true) {
    const auto lt = html.find("</", i);
    if (lt == std::string_view::npos) {
      if (captured) *captured += html.substr(pos);
      return html.size();
    }
    const auto candidate = lower(html.substr(lt + 2, name.size()));
    const std::size_t after = lt + 2 + name.size();
    if (candidate == name &&
        (after >= html.size() || !is_name_char(html[after]))) {
      if (captured) *captured += html.substr(pos, lt - pos);
      const auto gt = html.find('>', after);
      return gt == std::string_view::npos ? html.size() : gt + 1;
    }
    i = lt + 2;
  }
}

}  // namespace

bool is_html_content_type(std::string_view content_type) {
  const std::string ct = lower(content_type);
  return ct.empty() || ct.find("text/html") != std::string::npos ||
         ct.find("application/xhtml") != std::string::npos;
}

HtmlText extract_html(std::string_view html) {
  HtmlText out;
  std::string pending_text;  // raw text, entity-decoded when flushed
  bool in_head = false;
  bool in_anchor = false;
  std::string anchor_href;
  std::string anchor_text;

  auto flush_text = [&]() {
    if (pending_text.empty()) return;
    const std::string text = decode_entities(pending_text);
    pending_text.clear();
    if (in_head) return;
    out.body += text;
    if (in_anchor) anchor_text += text;
  };
  auto separate = [&]() {
    out.body += ' ';
    if (in_anchor) anchor_text += ' ';
  };
  auto close_anchor = [&]() {
    if (!in_anchor) return;
    out.anchors.emplace_back(std::move(anchor_href), std::move(anchor_text));
    anchor_href.clear();
    anchor_text.clear();
    in_anchor = false;
  };

  std::size_t i = 0;
  while (i < html.size()) {
    const char c = html[i];
    if (c != '<') {
      pending_text += c;
      ++i;
      continue;
    }
    if (html.substr(i, 4) == "<!--") {
      flush_text();
      const auto end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    const char next = i + 1 < html.size() ? html[i + 1] : '\0';
    if (next == '!' || next == '?') {
      flush_text();
      const auto end = html.find('>', i);
      i = end == std::string_view::npos ? html.size() : end + 1;
      continue;
    }
    const bool starts_tag = std::isalpha(static_cast<unsigned char>(next)) ||
                            (next == '/' && i + 2 < html.size() &&
                             std::isalpha(static_cast<unsigned char>(html[i + 2])));
    if (!starts_tag) {
      pending_text += c;  // stray '<'
      ++i;
      continue;
    }

    flush_text();
    Tag tag;
    i = parse_tag(html, i, tag);
    if (!is_inline_tag(tag.name)) separate();

    if (tag.closing) {
      if (tag.name == "a") close_anchor();
      if (tag.name == "head") in_head = false;
      continue;
    }
    if (tag.name == "head") {
      in_head = true;
    } else if (tag.name == "body") {
      in_head = false;
    } else if (tag.name == "title") {
      std::string title;
      i = skip_raw_text(html, i, "title", &title);
      if (out.title.empty()) out.title = decode_entities(title);
    } else if (tag.name == "script" || tag.name == "style" ||
               tag.name == "noscript" || tag.name == "template") {
      i = skip_raw_text(html, i, tag.name, nullptr);
    } else if (tag.name == "base") {
      if (auto href = tag.attr("href")) out.base_href = *href;
    } else if (tag.name == "a") {
      close_anchor();  // <a> does not nest
      if (auto href = tag.attr("href")) {
        in_anchor = true;
        anchor_href = *href;
      }
    }
  }
  flush_text();
  close_anchor();
  return out;
}

PageDocument parse_page(const RawPage& raw, const Stoplist& stoplist) {
  const std::string_view head = std::string_view(raw.body).substr(0, 1024);
  if (head.find('\0') != std::string_view::npos) {
    throw Error(ErrorCode::kParseFailure, "binary content at " + raw.url);
  }

  const HtmlText text = extract_html(raw.body);
  PageDocument doc;
  doc.url = raw.url;
  doc.title_terms = analyze(text.title, stoplist);
  doc.body_terms = analyze(text.body, stoplist);

  std::string base = raw.url;
  if (!text.base_href.empty()) {
    if (auto resolved = canonicalize(raw.url, text.base_href)) base = *resolved;
  }
  std::unordered_set<std::string> seen;
  for (const auto& [href, anchor] : text.anchors) {
    auto url = canonicalize(base, href);
    if (!url || *url == doc.url) continue;
    if (!seen.insert(*url).second) continue;
    doc.links.push_back(PageLink{std::move(*url), analyze(anchor, stoplist)});
  }

  std::vector<Term> all = doc.title_terms;
  all.insert(all.end(), doc.body_terms.begin(), doc.body_terms.end());
  doc.term_counts = term_frequencies(all);
  return doc;
}

}  // namespace focus
