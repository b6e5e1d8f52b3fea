#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace focus {

// A stemmed, lowercase, non-stopword token.
using Term = std::string;

// Occurrence counts; absent terms are not stored, so every count is >= 1.
using TermCounts = std::map<Term, int>;

class Stoplist {
 public:
  Stoplist() = default;
  explicit Stoplist(std::unordered_set<std::string> words)
      : words_(std::move(words)) {}

  // The compiled-in English list (same content as data/stopwords.txt).
  static const Stoplist& english();

  // One word per line, '#' comments, blank lines ignored. Words are lowercased.
  static Stoplist from_file(const std::filesystem::path& path);
  static Stoplist parse(std::string_view text);

  bool contains(std::string_view word) const {
    return words_.find(std::string(word)) != words_.end();
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Maximal runs of ASCII letters, lowercased. Everything else separates.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> remove_stopwords(std::span<const std::string> tokens,
                                          const Stoplist& stoplist);

// Porter (1980) suffix stripping, steps 1a through 5b. Input must be a
// lowercase word.
Term stem(std::string_view token);

TermCounts term_frequencies(std::span<const Term> terms);

// tokenize -> remove_stopwords -> drop single letters -> stem.
std::vector<Term> analyze(std::string_view text, const Stoplist& stoplist);

}  // namespace focus
