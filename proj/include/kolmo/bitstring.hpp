#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kolmo {

/// Finite sequence of bits. Stored one bit per byte; the sizes handled by the
/// toolkit are small enough that direct indexing matters more than density.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t count, bool bit = false) : bits_(count, bit ? 1 : 0) {}

  /// Parses 0/1 text, first character first. Throws invalid_format otherwise.
  static BitString from_text(std::string_view text);
  /// The low `width` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);
  /// Plain binary of `value` without leading zeros; zero maps to the empty string.
  static BitString binary(std::uint64_t value);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }

  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }
  void append_uint(std::uint64_t value, std::size_t width);
  void append_repeated(bool bit, std::size_t count) { bits_.insert(bits_.end(), count, bit ? 1 : 0); }
  void reserve(std::size_t n) { bits_.reserve(n); }

  BitString slice(std::size_t pos, std::size_t len) const;
  bool starts_with(const BitString& prefix) const noexcept;
  /// Value of the whole string read as unsigned binary; requires size() <= 64.
  std::uint64_t to_uint() const;
  std::size_t count_ones() const noexcept;

  /// Adds one to the string read as a binary number of fixed width.
  /// Returns false (leaving all zeros) on overflow.
  bool increment() noexcept;

  std::string to_string() const;
  std::span<const std::uint8_t> raw() const noexcept { return bits_; }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.bits_.size() <=> b.bits_.size(); c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

BitString operator+(BitString a, const BitString& b);

/// Sequential reader used by the unpackers and decoders.
class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(&bits) {}

  bool at_end() const noexcept { return pos_ >= bits_->size(); }
  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bits_->size() - pos_; }
  bool read() { return (*bits_)[pos_++]; }
  std::uint64_t read_uint(std::size_t width);
  BitString read_bits(std::size_t count);

 private:
  const BitString* bits_;
  std::size_t pos_ = 0;
};

/// All 2^n strings of length n, in increasing binary order.
std::vector<BitString> all_bitstrings(std::size_t n);

}  // namespace kolmo

template <>
struct std::hash<kolmo::BitString> {
  std::size_t operator()(const kolmo::BitString& b) const noexcept {
    std::size_t h = 1469598103934665603ull ^ b.size();
    for (auto v : b.raw()) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};
