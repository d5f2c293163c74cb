#include "kolmo/entropy.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "kolmo/error.hpp"

namespace kolmo {

double entropy(std::span<const double> probabilities) {
  if (probabilities.empty()) throw Error(ErrorKind::invalid_distribution, "empty distribution");
  double sum = 0.0;
  for (double f : probabilities) {
    if (!(f >= 0.0) || f > 1.0 + kDistributionTolerance)
      throw Error(ErrorKind::invalid_distribution, "probability outside [0,1]");
    sum += f;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance)
    throw Error(ErrorKind::invalid_distribution, "probabilities sum to " + std::to_string(sum));
  double h = 0.0;
  for (double f : probabilities)
    if (f > 0.0) h -= f * std::log2(f);
  return h;
}

double total_information(std::span<const std::uint64_t> counts) {
  std::uint64_t n = 0;
  double sum = 0.0;
  for (auto m : counts) {
    n += m;
    if (m > 0) sum += static_cast<double>(m) * std::log2(static_cast<double>(m));
  }
  if (n == 0) return 0.0;
  return static_cast<double>(n) * std::log2(static_cast<double>(n)) - sum;
}

double entropy_of_counts(std::span<const std::uint64_t> counts) {
  auto n = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (n == 0) throw Error(ErrorKind::empty_source, "all counts are zero");
  std::vector<double> f;
  f.reserve(counts.size());
  for (auto m : counts) f.push_back(static_cast<double>(m) / static_cast<double>(n));
  return entropy(f);
}

double cross_entropy(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorKind::invalid_distribution, "distributions differ in size");
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    h -= p[i] * std::log2(q[i]);
  }
  return h;
}

BigInt class_size(std::span<const std::uint64_t> counts) {
  // Product of binomials C(m_1 + ... + m_i, m_i), each built incrementally.
  BigInt size = 1;
  std::uint64_t n = 0;
  for (auto m : counts) {
    for (std::uint64_t j = 1; j <= m; ++j) {
      ++n;
      size *= n;
      size /= j;
    }
  }
  return size;
}

std::vector<std::uint64_t> counts_of(std::span<const std::size_t> word, std::size_t alphabet_size) {
  std::vector<std::uint64_t> counts(alphabet_size, 0);
  for (auto a : word) {
    if (a >= alphabet_size) throw Error(ErrorKind::alphabet_mismatch, "symbol index outside the alphabet");
    ++counts[a];
  }
  return counts;
}

// The number of completions of a prefix is the class size of the remaining
// counts. With M that size and len the remaining length, fixing the next
// symbol to a leaves M * rem_a / len completions, which is an exact division.
BigInt rank(std::span<const std::uint64_t> counts, std::span<const std::size_t> word) {
  if (counts_of(word, counts.size()) != std::vector<std::uint64_t>(counts.begin(), counts.end()))
    throw Error(ErrorKind::class_mismatch, "word does not have the class counts");
  std::vector<std::uint64_t> rem(counts.begin(), counts.end());
  BigInt remaining = class_size(counts);
  BigInt r = 0;
  std::uint64_t len = word.size();
  for (auto w : word) {
    for (std::size_t a = 0; a < w; ++a)
      if (rem[a] > 0) r += remaining * rem[a] / len;
    remaining = remaining * rem[w] / len;
    --rem[w];
    --len;
  }
  return r;
}

std::vector<std::size_t> unrank(std::span<const std::uint64_t> counts, const BigInt& r) {
  BigInt remaining = class_size(counts);
  if (r < 0 || r >= remaining) throw Error(ErrorKind::out_of_range, "rank outside the class");
  std::vector<std::uint64_t> rem(counts.begin(), counts.end());
  std::uint64_t len = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  BigInt left = r;
  std::vector<std::size_t> word;
  word.reserve(len);
  while (len > 0) {
    for (std::size_t a = 0; a < rem.size(); ++a) {
      if (rem[a] == 0) continue;
      BigInt block = remaining * rem[a] / len;
      if (left < block) {
        word.push_back(a);
        remaining = block;
        --rem[a];
        break;
      }
      left -= block;
    }
    --len;
  }
  return word;
}

std::size_t rank_width(const BigInt& size) {
  if (size <= 1) return 0;
  BigInt v = size - 1;
  return static_cast<std::size_t>(boost::multiprecision::msb(v)) + 1;
}

double log2_big(const BigInt& value) {
  if (value <= 0) throw Error(ErrorKind::out_of_range, "log2 of a nonpositive number");
  auto top = static_cast<std::size_t>(boost::multiprecision::msb(value));
  if (top < 53) return std::log2(value.convert_to<double>());
  std::size_t shift = top - 52;
  BigInt head = value >> shift;
  return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

namespace {

BitString to_bits(const BigInt& value, std::size_t width) {
  BitString bits;
  for (std::size_t i = width; i-- > 0;) bits.push_back(boost::multiprecision::bit_test(value, i));
  return bits;
}

BigInt from_bits(const BitString& bits) {
  BigInt v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    v <<= 1;
    if (bits[i]) v |= 1;
  }
  return v;
}

}  // namespace

BitString enum_encode(std::span<const std::size_t> word, std::size_t alphabet_size) {
  if (alphabet_size == 0) throw Error(ErrorKind::invalid_parameter, "empty alphabet");
  auto counts = counts_of(word, alphabet_size);
  std::vector<BitString> numerals;
  numerals.reserve(counts.size());
  for (auto m : counts) numerals.push_back(BitString::binary(m));
  auto width = rank_width(class_size(counts));
  return pair_pack_len(numerals, to_bits(rank(counts, word), width));
}

std::vector<std::size_t> enum_decode(const BitString& bits, std::size_t alphabet_size) {
  if (alphabet_size == 0) throw Error(ErrorKind::invalid_parameter, "empty alphabet");
  auto packed = pair_unpack_len(bits, alphabet_size);
  std::vector<std::uint64_t> counts;
  for (const auto& numeral : packed.parts) {
    if (!numeral.empty() && !numeral[0])
      throw Error(ErrorKind::malformed_packing, "count numeral has a leading zero");
    if (numeral.size() > 40) throw Error(ErrorKind::malformed_packing, "count numeral too large");
    counts.push_back(numeral.to_uint());
  }
  auto size = class_size(counts);
  if (packed.tail.size() != rank_width(size))
    throw Error(ErrorKind::malformed_packing, "rank field has the wrong width");
  auto r = from_bits(packed.tail);
  if (r >= size) throw Error(ErrorKind::malformed_packing, "rank exceeds the class size");
  return unrank(counts, r);
}

BitString enum_encode(std::string_view word, std::string_view alphabet) {
  std::vector<std::size_t> idx;
  idx.reserve(word.size());
  for (char c : word) {
    auto pos = alphabet.find(c);
    if (pos == std::string_view::npos)
      throw Error(ErrorKind::alphabet_mismatch, "character '" + std::string(1, c) + "' not in alphabet");
    idx.push_back(pos);
  }
  return enum_encode(idx, alphabet.size());
}

std::string enum_decode(const BitString& bits, std::string_view alphabet) {
  std::string out;
  for (auto i : enum_decode(bits, alphabet.size())) out.push_back(alphabet[i]);
  return out;
}

double enum_overhead_constant(std::size_t alphabet_size) {
  return 7.0 * static_cast<double>(alphabet_size) + 1.0;
}

}  // namespace kolmo
