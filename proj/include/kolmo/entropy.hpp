#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kolmo/bitstring.hpp"
#include "kolmo/coding.hpp"

namespace kolmo {

inline constexpr double kDistributionTolerance = 1e-9;

/// Shannon entropy in bits per symbol, with 0 log 0 = 0. Throws
/// invalid_distribution unless the entries are nonnegative and sum to one
/// within kDistributionTolerance.
double entropy(std::span<const double> probabilities);

/// Entropy of the empirical distribution m_i / n.
double entropy_of_counts(std::span<const std::uint64_t> counts);

/// n * H for the empirical distribution, computed as n log n - sum m log m.
double total_information(std::span<const std::uint64_t> counts);

/// -sum p_i log q_i (infinite when some p_i > 0 meets q_i = 0).
double cross_entropy(std::span<const double> p, std::span<const double> q);

/// Number of words with exactly these symbol counts: n! / (m_1! ... m_s!).
BigInt class_size(std::span<const std::uint64_t> counts);

/// Symbol counts of a word over an alphabet of `alphabet_size` indices.
std::vector<std::uint64_t> counts_of(std::span<const std::size_t> word, std::size_t alphabet_size);

/// Position of `word` in the lexicographic listing of its frequency class.
/// Throws class_mismatch when the word's counts differ from `counts`.
BigInt rank(std::span<const std::uint64_t> counts, std::span<const std::size_t> word);

/// Inverse of rank. Throws out_of_range unless 0 <= r < class_size(counts).
std::vector<std::size_t> unrank(std::span<const std::uint64_t> counts, const BigInt& r);

/// Minimal bit width able to hold every rank of a class: ceil(log2(size)).
std::size_t rank_width(const BigInt& size);

/// log2 of a positive big integer, accurate to double precision.
double log2_big(const BigInt& value);

// Enumerative code: the counts as plain binary numerals packed with
// pair_pack_len, followed by the rank in exactly rank_width(class size) bits.
BitString enum_encode(std::span<const std::size_t> word, std::size_t alphabet_size);
std::vector<std::size_t> enum_decode(const BitString& bits, std::size_t alphabet_size);

/// Character-level conveniences; `alphabet` lists the symbols in order.
BitString enum_encode(std::string_view word, std::string_view alphabet);
std::string enum_decode(const BitString& bits, std::string_view alphabet);

/// Constant c with |enum_encode(w)| <= nH + c log2(n + 2) for every word
/// over an s-letter alphabet (n >= 0): each packed count costs at most
/// 3 log2(n+2) + 4 <= 7 log2(n+2) bits and the rank at most nH + 1.
double enum_overhead_constant(std::size_t alphabet_size);

}  // namespace kolmo
