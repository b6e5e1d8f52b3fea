#include "focus/topic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "focus/errors.hpp"
#include "focus/page.hpp"

namespace focus {

CorpusStats corpus_stats(std::span<const std::vector<Term>> documents) {
  if (documents.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "topic corpus has no documents");
  }
  CorpusStats stats;
  stats.doc_count = documents.size();
  for (const auto& doc : documents) {
    for (const auto& [term, count] : term_frequencies(doc)) {
      stats.tf_total[term] += count;
      stats.df[term] += 1;
    }
  }
  return stats;
}

WeightTable::WeightTable(std::map<Term, double> entries, std::size_t capacity)
    : entries_(std::move(entries)), capacity_(capacity) {
  for (const auto& [term, w] : entries_) {
    if (!(w > 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight for '" + term + "' outside (0, 1]");
    }
    norm_squared_ += w * w;
  }
}

double WeightTable::weight(const Term& term) const {
  auto it = entries_.find(term);
  return it == entries_.end() ? 0.0 : it->second;
}

std::vector<std::pair<Term, double>> WeightTable::ranked() const {
  std::vector<std::pair<Term, double>> out(entries_.begin(), entries_.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  return out;
}

WeightTable normalize_top(const std::map<Term, double>& raw_weights,
                          std::size_t capacity) {
  if (raw_weights.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no terms to build a table from");
  }
  if (capacity == 0) {
    throw Error(ErrorCode::kInvalidArgument, "table capacity must be >= 1");
  }
  // Map order is lexicographic, so a stable sort on weight leaves ties in
  // term order.
  std::vector<std::pair<Term, double>> ranked(raw_weights.begin(),
                                              raw_weights.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > capacity) ranked.resize(capacity);

  const double max_weight = ranked.front().second;
  if (!(max_weight > 0.0)) {
    throw Error(ErrorCode::kEmptyCorpus, "all raw weights are zero");
  }
  std::map<Term, double> entries;
  for (const auto& [term, w] : ranked) {
    if (w > 0.0) entries.emplace(term, w / max_weight);
  }
  return WeightTable(std::move(entries), capacity);
}

WeightTable build_weight_table(const CorpusStats& stats, std::size_t capacity) {
  std::map<Term, double> raw;
  for (const auto& [term, tf] : stats.tf_total) {
    auto df = stats.df.find(term);
    if (df == stats.df.end()) continue;
    raw.emplace(term, static_cast<double>(tf) * static_cast<double>(df->second));
  }
  return normalize_top(raw, capacity);
}

WeightTable expand_table(const WeightTable& table, const TermCounts& page_terms,
                         double page_relevance, double threshold) {
  if (page_relevance < threshold || page_terms.empty()) return table;

  // First maximum in map order wins ties lexicographically.
  auto top = page_terms.begin();
  for (auto it = page_terms.begin(); it != page_terms.end(); ++it) {
    if (it->second > top->second) top = it;
  }
  if (table.contains(top->first) || !(page_relevance > 0.0)) return table;

  auto entries = table.entries();
  entries.emplace(top->first, std::min(page_relevance, 1.0));
  return WeightTable(std::move(entries), table.capacity());
}

WeightTable with_topic_terms(const WeightTable& table,
                             std::span<const Term> terms) {
  auto entries = table.entries();
  bool changed = false;
  for (const auto& t : terms) changed |= entries.emplace(t, 1.0).second;
  if (!changed) return table;
  return WeightTable(std::move(entries), table.capacity());
}

WeightTable build_topic_table(const std::filesystem::path& dir,
                              std::string_view topic_name,
                              std::size_t capacity, const Stoplist& stoplist) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "topic directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<std::vector<Term>> documents;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();

    const auto ext = file.extension().string();
    const bool html = ext == ".html" || ext == ".htm" ||
                      content.find("<html") != std::string::npos ||
                      content.find("<HTML") != std::string::npos;
    std::vector<Term> terms;
    if (html) {
      const HtmlText text = extract_html(content);
      terms = analyze(text.title, stoplist);
      auto body = analyze(text.body, stoplist);
      terms.insert(terms.end(), body.begin(), body.end());
    } else {
      terms = analyze(content, stoplist);
    }
    documents.push_back(std::move(terms));
  }

  const CorpusStats stats = corpus_stats(documents);
  WeightTable table = build_weight_table(stats, capacity);
  const auto topic_terms = analyze(topic_name, stoplist);
  return with_topic_terms(table, topic_terms);
}

void write_table(std::ostream& out, const WeightTable& table) {
  out << std::fixed << std::setprecision(6);
  for (const auto& [term, w] : table.ranked()) out << term << '\t' << w << '\n';
}

WeightTable read_table(std::istream& in) {
  std::map<Term, double> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorCode::kConfig,
                  "weight table line " + std::to_string(lineno) +
                      ": expected term<TAB>weight");
    }
    double w = 0.0;
    try {
      std::size_t used = 0;
      w = std::stod(line.substr(tab + 1), &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, "weight table line " +
                                          std::to_string(lineno) +
                                          ": bad weight");
    }
    if (!(w > 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::kConfig, "weight table line " +
                                          std::to_string(lineno) +
                                          ": weight outside (0, 1]");
    }
    if (!entries.emplace(line.substr(0, tab), w).second) {
      throw Error(ErrorCode::kConfig, "weight table line " +
                                          std::to_string(lineno) +
                                          ": duplicate term");
    }
  }
  if (entries.empty()) throw Error(ErrorCode::kEmptyTable, "weight table is empty");
  const std::size_t n = entries.size();
  return WeightTable(std::move(entries), n);
}

void save_table(const std::filesystem::path& path, const WeightTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_table(out, table);
}

WeightTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return read_table(in);
}

}  // namespace focus
