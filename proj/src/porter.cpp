#include <array>
#include <string>
#include <string_view>

#include "focus/textproc.hpp"

// Porter, "An algorithm for suffix stripping" (1980). This follows the
// published rule tables, not the later reference C code: step 2 uses
// ABLI->ABLE and has no LOGI rule, and short words are not skipped.

namespace focus {
namespace {

bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_consonant(std::string_view w, std::size_t i) {
  if (is_vowel_letter(w[i])) return false;
  if (w[i] == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
  return true;
}

// m in [C](VC){m}[V]
int measure(std::string_view w) {
  int m = 0;
  std::size_t i = 0;
  const std::size_t n = w.size();
  while (i < n && is_consonant(w, i)) ++i;
  while (i < n) {
    while (i < n && !is_consonant(w, i)) ++i;
    if (i >= n) break;
    while (i < n && is_consonant(w, i)) ++i;
    ++m;
  }
  return m;
}

bool contains_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!is_consonant(w, i)) return true;
  }
  return false;
}

bool ends_double_consonant(std::string_view w) {
  const std::size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends cvc, where the second c is not w, x or y.
bool ends_cvc(std::string_view w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  const char last = w[n - 1];
  return is_consonant(w, n - 3) && !is_consonant(w, n - 2) &&
         is_consonant(w, n - 1) && last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.substr(w.size() - suffix.size()) == suffix;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

enum class Cond { kMGt0, kMGt1 };

// The first rule whose suffix matches decides; if its condition fails the
// word is left alone.
template <std::size_t N>
void apply_rules(std::string& w, const std::array<Rule, N>& rules, Cond cond) {
  for (const Rule& r : rules) {
    if (!ends_with(w, r.suffix)) continue;
    std::string_view stem(w.data(), w.size() - r.suffix.size());
    const int m = measure(stem);
    const bool ok = cond == Cond::kMGt0 ? m > 0 : m > 1;
    if (ok) w = std::string(stem) + std::string(r.replacement);
    return;
  }
}

void step1a(std::string& w) {
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ss")) {
    // unchanged
  } else if (ends_with(w, "s")) {
    w.pop_back();
  }
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0) w.pop_back();
    return;
  }
  std::string stem;
  if (ends_with(w, "ed") &&
      contains_vowel(std::string_view(w).substr(0, w.size() - 2))) {
    stem = w.substr(0, w.size() - 2);
  } else if (ends_with(w, "ing") &&
             contains_vowel(std::string_view(w).substr(0, w.size() - 3))) {
    stem = w.substr(0, w.size() - 3);
  } else {
    return;
  }

  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) {
    stem += 'e';
  } else if (ends_double_consonant(stem)) {
    const char last = stem.back();
    if (last != 'l' && last != 's' && last != 'z') stem.pop_back();
  } else if (measure(stem) == 1 && ends_cvc(stem)) {
    stem += 'e';
  }
  w = std::move(stem);
}

void step1c(std::string& w) {
  if (ends_with(w, "y") &&
      contains_vowel(std::string_view(w).substr(0, w.size() - 1))) {
    w.back() = 'i';
  }
}

void step2(std::string& w) {
  static constexpr std::array<Rule, 20> kRules{{
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
      {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
      {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
      {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
      {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
      {"iviti", "ive"},   {"biliti", "ble"},
  }};
  apply_rules(w, kRules, Cond::kMGt0);
}

void step3(std::string& w) {
  static constexpr std::array<Rule, 7> kRules{{
      {"icate", "ic"},
      {"ative", ""},
      {"alize", "al"},
      {"iciti", "ic"},
      {"ical", "ic"},
      {"ful", ""},
      {"ness", ""},
  }};
  apply_rules(w, kRules, Cond::kMGt0);
}

void step4(std::string& w) {
  static constexpr std::array<std::string_view, 19> kSuffixes{
      "al",  "ance", "ence", "er",  "ic",  "able", "ible",
      "ant", "ement", "ment", "ent", "ion", "ou",   "ism",
      "ate", "iti",  "ous",  "ive", "ize"};
  for (std::string_view suffix : kSuffixes) {
    if (!ends_with(w, suffix)) continue;
    std::string_view stem(w.data(), w.size() - suffix.size());
    bool ok = measure(stem) > 1;
    if (suffix == "ion") {
      ok = ok && !stem.empty() && (stem.back() == 's' || stem.back() == 't');
    }
    if (ok) w.resize(stem.size());
    return;
  }
}

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::string_view stem(w.data(), w.size() - 1);
  const int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

void step5b(std::string& w) {
  if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l') {
    w.pop_back();
  }
}

}  // namespace

Term stem(std::string_view token) {
  std::string w(token);
  if (w.empty()) return w;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace focus
