#pragma once

// Fixed-width bit masks used as the set representation for every sumset
// kernel. Bit i stands for group element i; word 0 holds bits 0..63.

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace rsum {

template <std::size_t Words>
class BitMask {
  static_assert(Words >= 1, "BitMask needs at least one word");

 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWords = Words;
  static constexpr std::size_t kBits = Words * 64;

  constexpr BitMask() = default;

  /// Mask with bits 0..n-1 set.
  static constexpr BitMask low_bits(std::size_t n) {
    BitMask out;
    for (std::size_t i = 0; i < Words; ++i) {
      if (n >= 64 * (i + 1)) {
        out.words_[i] = ~word_type{0};
      } else if (n > 64 * i) {
        out.words_[i] = (word_type{1} << (n - 64 * i)) - 1;
      }
    }
    return out;
  }

  static constexpr BitMask single(std::size_t bit) {
    BitMask out;
    out.set(bit);
    return out;
  }

  constexpr void set(std::size_t bit) { words_[bit >> 6] |= word_type{1} << (bit & 63); }
  constexpr void reset(std::size_t bit) { words_[bit >> 6] &= ~(word_type{1} << (bit & 63)); }
  [[nodiscard]] constexpr bool test(std::size_t bit) const {
    return (words_[bit >> 6] >> (bit & 63)) & 1U;
  }

  [[nodiscard]] constexpr std::size_t count() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  [[nodiscard]] constexpr bool none() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  [[nodiscard]] constexpr bool any() const { return !none(); }

  /// Index of the highest set bit, or kBits when empty.
  [[nodiscard]] constexpr std::size_t highest() const {
    for (std::size_t i = Words; i-- > 0;) {
      if (words_[i] != 0) return 64 * i + 63 - static_cast<std::size_t>(std::countl_zero(words_[i]));
    }
    return kBits;
  }

  [[nodiscard]] constexpr bool is_subset_of(const BitMask& other) const {
    for (std::size_t i = 0; i < Words; ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }

  constexpr BitMask& operator|=(const BitMask& o) {
    for (std::size_t i = 0; i < Words; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  constexpr BitMask& operator&=(const BitMask& o) {
    for (std::size_t i = 0; i < Words; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  constexpr BitMask& operator^=(const BitMask& o) {
    for (std::size_t i = 0; i < Words; ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  friend constexpr BitMask operator|(BitMask a, const BitMask& b) { return a |= b; }
  friend constexpr BitMask operator&(BitMask a, const BitMask& b) { return a &= b; }
  friend constexpr BitMask operator^(BitMask a, const BitMask& b) { return a ^= b; }

  /// Set difference a \ b.
  [[nodiscard]] constexpr BitMask minus(const BitMask& b) const {
    BitMask out = *this;
    for (std::size_t i = 0; i < Words; ++i) out.words_[i] &= ~b.words_[i];
    return out;
  }

  [[nodiscard]] constexpr BitMask shifted_left(std::size_t s) const {
    BitMask out;
    if (s >= kBits) return out;
    const std::size_t ws = s >> 6;
    const std::size_t bs = s & 63;
    for (std::size_t i = Words; i-- > ws;) {
      word_type v = words_[i - ws] << bs;
      if (bs != 0 && i > ws) v |= words_[i - ws - 1] >> (64 - bs);
      out.words_[i] = v;
    }
    return out;
  }

  [[nodiscard]] constexpr BitMask shifted_right(std::size_t s) const {
    BitMask out;
    if (s >= kBits) return out;
    const std::size_t ws = s >> 6;
    const std::size_t bs = s & 63;
    for (std::size_t i = 0; i + ws < Words; ++i) {
      word_type v = words_[i + ws] >> bs;
      if (bs != 0 && i + ws + 1 < Words) v |= words_[i + ws + 1] << (64 - bs);
      out.words_[i] = v;
    }
    return out;
  }

  /// Cyclic rotation by s inside the low n bits; every bit at position >= n
  /// must already be clear.
  [[nodiscard]] constexpr BitMask rotated(std::size_t s, std::size_t n) const {
    if (s == 0) return *this;
    BitMask out = shifted_left(s) | shifted_right(n - s);
    return out & low_bits(n);
  }

  [[nodiscard]] constexpr word_type word(std::size_t i) const { return words_[i]; }
  constexpr void set_word(std::size_t i, word_type v) { words_[i] = v; }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::size_t i = 0; i < Words; ++i) {
      word_type w = words_[i];
      while (w != 0) {
        f(64 * i + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  friend constexpr bool operator==(const BitMask&, const BitMask&) = default;

  /// Orders masks as unsigned integers (bit 0 least significant).
  friend constexpr std::strong_ordering operator<=>(const BitMask& a, const BitMask& b) {
    for (std::size_t i = Words; i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    }
    return std::strong_ordering::equal;
  }

  /// Copy into a mask of a different width; bits beyond the target width must be clear.
  template <std::size_t Other>
  [[nodiscard]] constexpr BitMask<Other> resized() const {
    BitMask<Other> out;
    for (std::size_t i = 0; i < Words; ++i) {
      if (i < Other) {
        out.set_word(i, words_[i]);
      } else if (words_[i] != 0) {
        throw std::out_of_range("BitMask::resized: bits beyond target width");
      }
    }
    return out;
  }

 private:
  std::array<word_type, Words> words_{};
};

}  // namespace rsum
