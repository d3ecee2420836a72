#pragma once

#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sel/simd/kernels.hpp"

namespace sel {

// Fixed-capacity dynamic bit set backed by the simd kernels.
class Bitset {
 public:
  using Word = simd::Word;

  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  bool empty_capacity() const { return bits_ == 0; }

  bool test(std::size_t i) const {
    assert(i < bits_);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  // Returns true if the bit was newly set.
  bool set(std::size_t i) {
    assert(i < bits_);
    Word& w = words_[i >> 6];
    const Word m = Word{1} << (i & 63);
    const bool was = w & m;
    w |= m;
    return !was;
  }
  void reset(std::size_t i) { words_[i >> 6] &= ~(Word{1} << (i & 63)); }
  void set_all() {
    for (Word& w : words_) w = ~Word{0};
    if (bits_ & 63) words_.back() = (Word{1} << (bits_ & 63)) - 1;
  }

  std::size_t count() const { return simd::popcount(words_); }
  bool none() const { return count() == 0; }
  bool any() const { return !none(); }

  // this |= other; returns how many bits were newly set.
  std::size_t merge(const Bitset& other) {
    assert(other.bits_ == bits_);
    return simd::or_count_new(words_, other.words_);
  }
  Bitset& operator&=(const Bitset& other) {
    assert(other.bits_ == bits_);
    simd::and_into(words_, other.words_);
    return *this;
  }
  Bitset& operator|=(const Bitset& other) {
    merge(other);
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

  bool is_subset_of(const Bitset& other) const {
    assert(other.bits_ == bits_);
    return simd::is_subset(words_, other.words_);
  }
  bool intersects(const Bitset& other) const {
    assert(other.bits_ == bits_);
    return simd::intersects(words_, other.words_);
  }

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.bits_ == b.bits_ && simd::equal(a.words_, b.words_);
  }
  friend std::strong_ordering operator<=>(const Bitset& a, const Bitset& b) {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits) {
        const int tz = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(tz));
        bits &= bits - 1;
      }
    }
  }

  std::span<const Word> words() const { return words_; }

  std::size_t hash() const {
    std::size_t h = bits_;
    for (Word w : words_) h = h * 1099511628211ull ^ std::hash<Word>{}(w);
    return h;
  }

 private:
  std::size_t bits_ = 0;
  std::vector<Word> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace sel
