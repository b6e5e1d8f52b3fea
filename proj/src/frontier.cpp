#include "focus/frontier.hpp"

namespace focus {

bool ScoredQueue::push(const std::string& url, double score, int level) {
  if (entries_.count(url)) return false;
  QueueEntry entry{url, score, next_seq_++, level};
  order_.insert(Key{score, entry.seq, url});
  entries_.emplace(url, std::move(entry));
  return true;
}

bool ScoredQueue::rescore(const std::string& url, double score) {
  auto it = entries_.find(url);
  if (it == entries_.end()) return false;
  QueueEntry& e = it->second;
  if (e.score == score) return true;
  order_.erase(Key{e.score, e.seq, e.url});
  e.score = score;
  order_.insert(Key{e.score, e.seq, e.url});
  return true;
}

bool ScoredQueue::set_level(const std::string& url, int level) {
  auto it = entries_.find(url);
  if (it == entries_.end()) return false;
  it->second.level = level;
  return true;
}

bool ScoredQueue::erase(const std::string& url) {
  auto it = entries_.find(url);
  if (it == entries_.end()) return false;
  order_.erase(Key{it->second.score, it->second.seq, it->second.url});
  entries_.erase(it);
  return true;
}

std::optional<QueueEntry> ScoredQueue::pop() {
  if (order_.empty()) return std::nullopt;
  auto first = order_.begin();
  auto it = entries_.find(first->url);
  QueueEntry entry = std::move(it->second);
  entries_.erase(it);
  order_.erase(first);
  return entry;
}

const QueueEntry* ScoredQueue::top() const {
  if (order_.empty()) return nullptr;
  return &entries_.at(order_.begin()->url);
}

const QueueEntry* ScoredQueue::find(const std::string& url) const {
  auto it = entries_.find(url);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<QueueEntry> ScoredQueue::ordered() const {
  std::vector<QueueEntry> out;
  out.reserve(order_.size());
  for (const Key& k : order_) out.push_back(entries_.at(k.url));
  return out;
}

std::vector<std::string> ScoredQueue::urls() const {
  std::vector<std::string> out;
  out.reserve(order_.size());
  for (const Key& k : order_) out.push_back(k.url);
  return out;
}

std::size_t demote_siblings(IrrelevantTable& table, const QueueEntry& umax) {
  std::size_t demoted = 0;
  for (const QueueEntry& e : table.ordered()) {
    if (e.level == umax.level && e.score <= umax.score) {
      table.set_level(e.url, e.level + 1);
      ++demoted;
    }
  }
  return demoted;
}

}  // namespace focus
