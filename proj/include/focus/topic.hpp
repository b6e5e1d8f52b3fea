#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "focus/textproc.hpp"

namespace focus {

struct CorpusStats {
  std::map<Term, long> tf_total;  // summed over documents
  std::map<Term, long> df;        // documents containing the term
  std::size_t doc_count = 0;
};

// Throws Error(kEmptyCorpus) when documents is empty.
CorpusStats corpus_stats(std::span<const std::vector<Term>> documents);

// Topic keywords with weights in (0, 1]. Immutable; expansion returns a new
// table.
class WeightTable {
 public:
  WeightTable() = default;
  WeightTable(std::map<Term, double> entries, std::size_t capacity);

  double weight(const Term& term) const;
  bool contains(const Term& term) const { return entries_.count(term) != 0; }
  const std::map<Term, double>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t capacity() const { return capacity_; }

  // Sum of squared weights, the table half of the cosine denominator.
  double norm_squared() const { return norm_squared_; }

  // Entries sorted by descending weight, then term.
  std::vector<std::pair<Term, double>> ranked() const;

  bool operator==(const WeightTable& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::map<Term, double> entries_;
  std::size_t capacity_ = 0;
  double norm_squared_ = 0.0;
};

// Keeps the `capacity` terms with the highest raw weight (ties: lexicographic
// term order) and divides by the largest raw weight.
WeightTable normalize_top(const std::map<Term, double>& raw_weights,
                          std::size_t capacity);

// Raw weight tf_total * df, then normalize_top.
WeightTable build_weight_table(const CorpusStats& stats, std::size_t capacity);

// Adds the page's most frequent term with weight = page_relevance when the
// page is relevant enough and the term is new. Existing weights never change.
WeightTable expand_table(const WeightTable& table, const TermCounts& page_terms,
                         double page_relevance, double threshold = 0.9);

// Inserts each term at weight 1.0 unless already present.
WeightTable with_topic_terms(const WeightTable& table,
                             std::span<const Term> terms);

// Reads every regular file in `dir` (HTML files use title + visible text),
// builds the table and force-inserts the analyzed topic name.
WeightTable build_topic_table(const std::filesystem::path& dir,
                              std::string_view topic_name,
                              std::size_t capacity, const Stoplist& stoplist);

// `term<TAB>weight` lines, 6 decimals, descending weight then term.
void write_table(std::ostream& out, const WeightTable& table);
WeightTable read_table(std::istream& in);
void save_table(const std::filesystem::path& path, const WeightTable& table);
WeightTable load_table(const std::filesystem::path& path);

}  // namespace focus
