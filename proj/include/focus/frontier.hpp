#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace focus {

struct QueueEntry {
  std::string url;
  double score = 0.0;
  std::uint64_t seq = 0;  // insertion order, kept across rescoring
  int level = 0;          // tunnel depth; unused by the main frontier
};

// URLs ordered by (score desc, insertion seq asc, url asc) with lookup by
// URL. Serves both as the main frontier and as the irrelevant table.
class ScoredQueue {
 public:
  // Returns false (and changes nothing) if the URL is already queued.
  bool push(const std::string& url, double score, int level = 0);

  // Returns false if the URL is not queued.
  bool rescore(const std::string& url, double score);
  bool set_level(const std::string& url, int level);
  bool erase(const std::string& url);

  std::optional<QueueEntry> pop();
  const QueueEntry* top() const;
  const QueueEntry* find(const std::string& url) const;
  bool contains(const std::string& url) const { return entries_.count(url) != 0; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Snapshot in pop order.
  std::vector<QueueEntry> ordered() const;
  std::vector<std::string> urls() const;

 private:
  struct Key {
    double score;
    std::uint64_t seq;
    std::string url;

    bool operator<(const Key& o) const {
      if (score != o.score) return score > o.score;
      if (seq != o.seq) return seq < o.seq;
      return url < o.url;
    }
  };

  std::set<Key> order_;
  std::unordered_map<std::string, QueueEntry> entries_;
  std::uint64_t next_seq_ = 0;
};

using Frontier = ScoredQueue;
using IrrelevantTable = ScoredQueue;

// After `umax` was fetched from the irrelevant table and turned out
// irrelevant: every remaining entry on umax's level whose score is <= umax's
// score moves one level deeper. Scores are untouched. Returns the number of
// entries demoted.
std::size_t demote_siblings(IrrelevantTable& table, const QueueEntry& umax);

}  // namespace focus
