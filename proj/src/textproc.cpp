#include "focus/textproc.hpp"

#include <fstream>
#include <sstream>

#include "focus/errors.hpp"

namespace focus {
namespace {

constexpr std::string_view kEnglishStopwords =
#include "stopwords_default.inc"
    ;

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

const Stoplist& Stoplist::english() {
  static const Stoplist list = [] {
    std::unordered_set<std::string> words;
    for (auto& w : tokenize(kEnglishStopwords)) words.insert(std::move(w));
    return Stoplist(std::move(words));
  }();
  return list;
}

Stoplist Stoplist::parse(std::string_view text) {
  std::unordered_set<std::string> words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string word(line.substr(first, last - first + 1));
    for (char& c : word) c = ascii_lower(c);
    words.insert(std::move(word));
  }
  return Stoplist(std::move(words));
}

Stoplist Stoplist::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read stopword file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_ascii_alpha(c)) {
      current.push_back(ascii_lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const Stoplist& stoplist) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stoplist.contains(t)) kept.push_back(t);
  }
  return kept;
}

TermCounts term_frequencies(std::span<const Term> terms) {
  TermCounts counts;
  for (const auto& t : terms) ++counts[t];
  return counts;
}

std::vector<Term> analyze(std::string_view text, const Stoplist& stoplist) {
  std::vector<Term> terms;
  for (const auto& token : tokenize(text)) {
    if (token.size() < 2 || stoplist.contains(token)) continue;
    terms.push_back(stem(token));
  }
  return terms;
}

}  // namespace focus
