#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace affinity {

/// Fixed-width bit vector, sized once to the graph it describes. Backs the
/// node/edge sets of path descriptors, so membership tests and equality are
/// plain word operations.
class DynamicBitset {
 public:
  DynamicBitset() = default;
  explicit DynamicBitset(std::size_t bits)
      : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
  }

  bool operator==(const DynamicBitset& other) const = default;

  std::uint64_t hash() const {
    std::uint64_t h = kFnvOffset;
    for (std::uint64_t w : words_) {
      h ^= w;
      h *= kFnvPrime;
    }
    return h;
  }

  // Hash of (*this | {bit}) without materializing the copy; lets the path
  // dedup check reject candidates before allocating a descriptor.
  std::uint64_t hash_with_bit(std::size_t bit) const {
    const std::size_t wi = bit >> 6;
    const std::uint64_t mask = std::uint64_t{1} << (bit & 63);
    std::uint64_t h = kFnvOffset;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      h ^= words_[i] | (i == wi ? mask : 0);
      h *= kFnvPrime;
    }
    return h;
  }

  // True iff *this equals (base | {bit}).
  bool equals_with_bit(const DynamicBitset& base, std::size_t bit) const {
    if (bits_ != base.bits_) return false;
    const std::size_t wi = bit >> 6;
    const std::uint64_t mask = std::uint64_t{1} << (bit & 63);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] != (base.words_[i] | (i == wi ? mask : 0))) return false;
    }
    return true;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  static constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
  static constexpr std::uint64_t kFnvPrime = 1099511628211ull;

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace affinity
