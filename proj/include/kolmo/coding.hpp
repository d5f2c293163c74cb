#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kolmo/bitstring.hpp"

namespace kolmo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// k-adic numerals
//
// Digits run over 1..k instead of 0..k-1, which makes the map between
// naturals and digit strings a bijection: 0 is the empty word, and ordering
// digit strings shorter-first then lexicographically is the numeric order.
// ---------------------------------------------------------------------------

using KadicDigits = std::vector<std::uint32_t>;  // most significant first

KadicDigits kadic_encode(std::uint64_t n, std::uint32_t k);
std::uint64_t kadic_decode(std::span<const std::uint32_t> digits, std::uint32_t k);

/// Text form: digits 1-9 as themselves, 10..35 as 'A'..'Z'.
std::string kadic_to_text(std::span<const std::uint32_t> digits);
KadicDigits kadic_from_text(std::string_view text);

/// Bit strings and naturals in bijection through the 2-adic system
/// (bit b stands for digit b+1): "" -> 0, "0" -> 1, "1" -> 2, "00" -> 3, ...
BitString dyadic_bits(std::uint64_t n);
std::uint64_t dyadic_value(const BitString& bits);

// ---------------------------------------------------------------------------
// Kraft inequality
// ---------------------------------------------------------------------------

/// Exact sum of 2^-l over the given lengths.
Rational kraft_sum(std::span<const unsigned> lengths);

/// Canonical prefix-free code with the requested lengths, returned in input
/// order, or nullopt when the Kraft sum exceeds one. Codewords are handed out
/// in lexicographic order to the lengths sorted ascending (ties by position).
std::optional<std::vector<BitString>> kraft_construct(std::span<const unsigned> lengths);

// ---------------------------------------------------------------------------
// Prefix codes
// ---------------------------------------------------------------------------

using Symbol = std::string;
using Word = std::vector<Symbol>;

/// Splits text into one-character symbols.
Word chars_of(std::string_view text);

struct FrequencyTable {
  std::vector<Symbol> symbols;
  std::vector<std::uint64_t> counts;

  /// Symbol counts of `text`, one symbol per byte, symbols in byte order.
  static FrequencyTable of_text(std::string_view text);
  std::uint64_t total() const noexcept;
};

class PrefixCode {
 public:
  /// Validates the invariants: nonempty distinct alphabet, one nonempty
  /// codeword per symbol, no codeword a prefix of another.
  PrefixCode(std::vector<Symbol> alphabet, std::vector<BitString> codewords);

  const std::vector<Symbol>& alphabet() const noexcept { return alphabet_; }
  const std::vector<BitString>& codewords() const noexcept { return codewords_; }
  std::size_t size() const noexcept { return alphabet_.size(); }
  const BitString& codeword(std::size_t index) const { return codewords_.at(index); }
  std::optional<std::size_t> index_of(const Symbol& symbol) const;

  BitString encode(std::span<const Symbol> word) const;
  Word decode(const BitString& bits) const;

  BitString encode_indices(std::span<const std::size_t> word) const;
  void encode_index_into(std::size_t index, BitString& out) const { out.append(codewords_[index]); }
  std::vector<std::size_t> decode_indices(const BitString& bits) const;

  /// Sum over symbols of count * codeword length.
  std::uint64_t weighted_length(std::span<const std::uint64_t> counts) const;

  /// {symbol: "0101"} as a JSON object; keys in alphabet order.
  std::string to_json() const;
  static PrefixCode from_json(std::string_view text);

 private:
  struct TrieNode {
    std::int32_t child[2] = {-1, -1};
    std::int32_t symbol = -1;
  };

  std::vector<Symbol> alphabet_;
  std::vector<BitString> codewords_;
  std::unordered_map<Symbol, std::size_t> index_;
  std::vector<TrieNode> trie_;
};

/// Huffman code lengths, one per count. Merges the two lightest subtrees,
/// ties broken by the smaller symbol index they contain. A lone symbol gets
/// length 1.
std::vector<unsigned> huffman_lengths(std::span<const std::uint64_t> counts);

/// Canonical Huffman code: codewords assigned by (length, symbol order).
/// Throws empty_source when no count is positive.
PrefixCode huffman_build(const FrequencyTable& freqs);

// ---------------------------------------------------------------------------
// Self-delimiting packing of several bit strings into one
// ---------------------------------------------------------------------------

struct Packed {
  std::vector<BitString> parts;
  BitString tail;

  friend bool operator==(const Packed&, const Packed&) = default;
};

/// 1^|u| 0 u for every part, then the tail. Length 2*sum|u_i| + |v| + s.
BitString pair_pack_unary(std::span<const BitString> parts, const BitString& tail);
Packed pair_unpack_unary(const BitString& bits, std::size_t part_count);

/// 1^|b| 0 b u for every part, where b is |u| in plain binary (empty for an
/// empty part), then the tail. Per part at most |u| + 2 log|u| + 3 bits.
BitString pair_pack_len(std::span<const BitString> parts, const BitString& tail);
Packed pair_unpack_len(const BitString& bits, std::size_t part_count);

/// Reads one length-prefixed part from `reader`; shared with the decoders
/// that embed this header format.
BitString read_len_part(BitReader& reader);
void write_len_part(const BitString& part, BitString& out);

}  // namespace kolmo
