#pragma once

// Bit-packed GF(2) rows and an incremental row-echelon basis used for
// rank computation and span membership.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qldpc {

class BitRow {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitRow() = default;
  explicit BitRow(std::size_t nbits) : nbits_(nbits), words_((nbits + kWordBits - 1) / kWordBits, 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t word_count() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Index of the lowest set bit at or after word `from_word`.
  std::optional<std::size_t> first_set(std::size_t from_word = 0) const {
    for (std::size_t w = from_word; w < words_.size(); ++w)
      if (words_[w]) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
  }

  /// this ^= other, touching only words at index >= from_word.
  void xor_from(const BitRow& other, std::size_t from_word) {
    const Word* src = other.words_.data();
    Word* dst = words_.data();
    for (std::size_t w = from_word; w < words_.size(); ++w) dst[w] ^= src[w];
  }

  BitRow& operator^=(const BitRow& o) {
    xor_from(o, 0);
    return *this;
  }
  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::size_t nbits_ = 0;
  std::vector<Word> words_;
};

/// Row-echelon basis of a GF(2) row space. Every stored row has a distinct
/// leading (lowest-index) bit and is zero below it; rows are kept sorted by
/// that pivot so a left-to-right sweep reduces any vector.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t nbits = 0) : nbits_(nbits) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return nbits_; }

  /// Reduces `v` in place against the basis; the result is zero iff v was in the span.
  void reduce(BitRow& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::size_t p = pivots_[i];
      if (v.test(p)) v.xor_from(rows_[i], p / BitRow::kWordBits);
    }
  }

  bool contains(BitRow v) const {
    reduce(v);
    return v.none();
  }

  /// Adds a row; returns false when it was already in the span.
  bool insert(BitRow v) {
    reduce(v);
    auto lead = v.first_set();
    if (!lead) return false;
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), *lead);
    auto pos = static_cast<std::size_t>(it - pivots_.begin());
    pivots_.insert(it, *lead);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    return true;
  }

 private:
  std::size_t nbits_;
  std::vector<std::size_t> pivots_;
  std::vector<BitRow> rows_;
};

}  // namespace qldpc
