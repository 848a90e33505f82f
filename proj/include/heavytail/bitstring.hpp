#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace heavytail {

/// Fixed-length binary vector. Doubles as the characteristic vector of a
/// subset of {0..n-1}; the length never changes after construction.
class BitString {
public:
  BitString() = default;

  explicit BitString(int n) : n_(n), words_((static_cast<size_t>(n) + 63) / 64, 0) {
    if (n < 0) throw std::invalid_argument("BitString: negative length");
  }

  static BitString from_string(const std::string& bits) {
    BitString s(static_cast<int>(bits.size()));
    for (size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        s.set(static_cast<int>(i), true);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("BitString: expected only '0'/'1'");
      }
    }
    return s;
  }

  static BitString from_mask(int n, uint64_t mask) {
    if (n > 64) throw std::invalid_argument("BitString::from_mask: n > 64");
    BitString s(n);
    if (n > 0) s.words_[0] = (n == 64) ? mask : (mask & ((uint64_t{1} << n) - 1));
    return s;
  }

  int size() const { return n_; }

  bool test(int i) const { return (words_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u; }

  void set(int i, bool v) {
    const uint64_t bit = uint64_t{1} << (i & 63);
    if (v)
      words_[static_cast<size_t>(i) >> 6] |= bit;
    else
      words_[static_cast<size_t>(i) >> 6] &= ~bit;
  }

  void flip(int i) { words_[static_cast<size_t>(i) >> 6] ^= uint64_t{1} << (i & 63); }

  void flip_all() {
    for (auto& w : words_) w = ~w;
    clear_padding();
  }

  int popcount() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  /// Mask of the lowest 64 bits; convenient for exhaustive enumeration at n <= 64.
  uint64_t low_mask() const { return words_.empty() ? 0 : words_[0]; }

  std::span<const uint64_t> words() const { return words_; }

  bool operator==(const BitString& o) const = default;

  std::string to_string() const {
    std::string s(static_cast<size_t>(n_), '0');
    for (int i = 0; i < n_; ++i)
      if (test(i)) s[static_cast<size_t>(i)] = '1';
    return s;
  }

private:
  void clear_padding() {
    const int rem = n_ & 63;
    if (rem != 0 && !words_.empty()) words_.back() &= (uint64_t{1} << rem) - 1;
  }

  int n_ = 0;
  std::vector<uint64_t> words_;
};

inline int hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  auto wa = a.words(), wb = b.words();
  int d = 0;
  for (size_t i = 0; i < wa.size(); ++i) d += std::popcount(wa[i] ^ wb[i]);
  return d;
}

inline BitString complement_of(const BitString& x) {
  BitString y = x;
  y.flip_all();
  return y;
}

}  // namespace heavytail
