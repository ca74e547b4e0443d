#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <optional>
#include <unordered_map>
#include <utility>

namespace affinity {

/// A simple LRU map: recency list plus key index, evicting from the tail
/// once size exceeds capacity. Capacity 0 disables storage entirely.
/// Not thread-safe; callers serialize access.
template <class Key, class Value, class Hash = std::hash<Key>>
class LruCache {
 public:
  explicit LruCache(std::size_t capacity) : capacity_(capacity) {}

  std::optional<Value> get(const Key& key) {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    items_.splice(items_.begin(), items_, it->second);
    return it->second->second;
  }

  void put(const Key& key, Value value) {
    if (capacity_ == 0) return;
    auto it = index_.find(key);
    if (it != index_.end()) {
      it->second->second = std::move(value);
      items_.splice(items_.begin(), items_, it->second);
      return;
    }
    items_.emplace_front(key, std::move(value));
    index_.emplace(key, items_.begin());
    while (index_.size() > capacity_) {
      index_.erase(items_.back().first);
      items_.pop_back();
      ++evictions_;
    }
  }

  std::size_t size() const { return index_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t evictions() const { return evictions_; }

  void clear() {
    items_.clear();
    index_.clear();
  }

 private:
  using Item = std::pair<Key, Value>;

  std::size_t capacity_;
  std::uint64_t evictions_ = 0;
  std::list<Item> items_;
  std::unordered_map<Key, typename std::list<Item>::iterator, Hash> index_;
};

}  // namespace affinity
