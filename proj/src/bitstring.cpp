#include "kolmo/bitstring.hpp"

#include <algorithm>

#include "kolmo/error.hpp"

namespace kolmo {

BitString BitString::from_text(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw Error(ErrorKind::invalid_format, "bit string may only contain 0 and 1, got '" + std::string(1, c) + "'");
    out.bits_.push_back(c == '1');
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  BitString out;
  out.append_uint(value, width);
  return out;
}

BitString BitString::binary(std::uint64_t value) {
  std::size_t width = 0;
  for (auto v = value; v != 0; v >>= 1) ++width;
  return from_uint(value, width);
}

void BitString::append_uint(std::uint64_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;)
    bits_.push_back(i < 64 ? static_cast<std::uint8_t>((value >> i) & 1u) : 0);
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos > size() || len > size() - pos) throw Error(ErrorKind::out_of_range, "bit slice out of range");
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

bool BitString::starts_with(const BitString& prefix) const noexcept {
  return prefix.size() <= size() && std::equal(prefix.bits_.begin(), prefix.bits_.end(), bits_.begin());
}

std::uint64_t BitString::to_uint() const {
  if (size() > 64) throw Error(ErrorKind::out_of_range, "bit string too long for a 64-bit value");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::size_t BitString::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BitString::increment() noexcept {
  for (std::size_t i = bits_.size(); i-- > 0;) {
    if (bits_[i] == 0) {
      bits_[i] = 1;
      return true;
    }
    bits_[i] = 0;
  }
  return false;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

BitString operator+(BitString a, const BitString& b) {
  a.append(b);
  return a;
}

std::uint64_t BitReader::read_uint(std::size_t width) {
  if (width > remaining()) throw Error(ErrorKind::truncated_stream, "bit stream ended inside a field");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 1) | static_cast<std::uint64_t>(read());
  return v;
}

BitString BitReader::read_bits(std::size_t count) {
  if (count > remaining()) throw Error(ErrorKind::truncated_stream, "bit stream ended inside a field");
  BitString out = bits_->slice(pos_, count);
  pos_ += count;
  return out;
}

std::vector<BitString> all_bitstrings(std::size_t n) {
  if (n >= 31) throw Error(ErrorKind::resource_limit, "refusing to enumerate 2^" + std::to_string(n) + " strings");
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(BitString::from_uint(v, n));
  return out;
}

}  // namespace kolmo
