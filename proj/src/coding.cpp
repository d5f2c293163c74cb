#include "kolmo/coding.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <queue>
#include <set>

#include <json.hpp>

#include "kolmo/error.hpp"

namespace kolmo {

// --- k-adic numerals --------------------------------------------------------

namespace {

void check_radix(std::uint32_t k) {
  if (k < 2) throw Error(ErrorKind::invalid_radix, "radix must be at least 2, got " + std::to_string(k));
}

}  // namespace

KadicDigits kadic_encode(std::uint64_t n, std::uint32_t k) {
  check_radix(k);
  KadicDigits digits;
  while (n > 0) {
    auto d = static_cast<std::uint32_t>(n % k);
    if (d == 0) d = k;
    digits.push_back(d);
    n = (n - d) / k;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::uint64_t kadic_decode(std::span<const std::uint32_t> digits, std::uint32_t k) {
  check_radix(k);
  std::uint64_t n = 0;
  for (auto d : digits) {
    if (d < 1 || d > k)
      throw Error(ErrorKind::malformed_numeral,
                  "digit " + std::to_string(d) + " outside 1.." + std::to_string(k));
    if (n > (UINT64_MAX - d) / k) throw Error(ErrorKind::out_of_range, "k-adic numeral overflows 64 bits");
    n = n * k + d;
  }
  return n;
}

std::string kadic_to_text(std::span<const std::uint32_t> digits) {
  std::string s;
  for (auto d : digits) {
    if (d >= 1 && d <= 9)
      s.push_back(static_cast<char>('0' + d));
    else if (d >= 10 && d <= 35)
      s.push_back(static_cast<char>('A' + (d - 10)));
    else
      throw Error(ErrorKind::malformed_numeral, "digit " + std::to_string(d) + " has no text form");
  }
  return s;
}

KadicDigits kadic_from_text(std::string_view text) {
  KadicDigits digits;
  for (char c : text) {
    if (c >= '1' && c <= '9')
      digits.push_back(static_cast<std::uint32_t>(c - '0'));
    else if (c >= 'A' && c <= 'Z')
      digits.push_back(static_cast<std::uint32_t>(c - 'A' + 10));
    else
      throw Error(ErrorKind::malformed_numeral, "bad k-adic digit '" + std::string(1, c) + "'");
  }
  return digits;
}

BitString dyadic_bits(std::uint64_t n) {
  BitString out;
  for (auto d : kadic_encode(n, 2)) out.push_back(d == 2);
  return out;
}

std::uint64_t dyadic_value(const BitString& bits) {
  if (bits.size() >= 64) throw Error(ErrorKind::out_of_range, "2-adic numeral overflows 64 bits");
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) n = 2 * n + (bits[i] ? 2 : 1);
  return n;
}

// --- Kraft --------------------------------------------------------------------

Rational kraft_sum(std::span<const unsigned> lengths) {
  Rational sum = 0;
  for (auto l : lengths) sum += Rational(BigInt(1), BigInt(1) << l);
  return sum;
}

namespace {

std::vector<BitString> canonical_codewords(std::span<const unsigned> lengths) {
  std::vector<std::size_t> order(lengths.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return lengths[a] < lengths[b]; });

  std::vector<BitString> out(lengths.size());
  BitString next;
  bool first = true;
  for (auto i : order) {
    if (!first && !next.increment()) throw Error(ErrorKind::invalid_parameter, "lengths violate Kraft");
    first = false;
    next.append_repeated(false, lengths[i] - next.size());
    out[i] = next;
  }
  return out;
}

}  // namespace

std::optional<std::vector<BitString>> kraft_construct(std::span<const unsigned> lengths) {
  if (lengths.empty()) throw Error(ErrorKind::invalid_parameter, "no codeword lengths given");
  if (std::find(lengths.begin(), lengths.end(), 0u) != lengths.end())
    throw Error(ErrorKind::invalid_parameter, "codeword lengths must be positive");
  if (kraft_sum(lengths) > 1) return std::nullopt;
  return canonical_codewords(lengths);
}

// --- Prefix codes -------------------------------------------------------------

Word chars_of(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) w.emplace_back(1, c);
  return w;
}

FrequencyTable FrequencyTable::of_text(std::string_view text) {
  std::array<std::uint64_t, 256> hist{};
  for (unsigned char c : text) ++hist[c];
  FrequencyTable t;
  for (std::size_t b = 0; b < 256; ++b) {
    if (hist[b] == 0) continue;
    t.symbols.emplace_back(1, static_cast<char>(b));
    t.counts.push_back(hist[b]);
  }
  return t;
}

std::uint64_t FrequencyTable::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

PrefixCode::PrefixCode(std::vector<Symbol> alphabet, std::vector<BitString> codewords)
    : alphabet_(std::move(alphabet)), codewords_(std::move(codewords)) {
  if (alphabet_.empty()) throw Error(ErrorKind::invalid_parameter, "prefix code needs a nonempty alphabet");
  if (alphabet_.size() != codewords_.size())
    throw Error(ErrorKind::invalid_parameter, "alphabet and codeword counts differ");
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (!index_.emplace(alphabet_[i], i).second)
      throw Error(ErrorKind::invalid_parameter, "duplicate symbol '" + alphabet_[i] + "'");
    if (codewords_[i].empty()) throw Error(ErrorKind::invalid_parameter, "empty codeword for '" + alphabet_[i] + "'");
  }

  trie_.emplace_back();
  for (std::size_t i = 0; i < codewords_.size(); ++i) {
    std::size_t node = 0;
    const auto& cw = codewords_[i];
    for (std::size_t j = 0; j < cw.size(); ++j) {
      if (trie_[node].symbol >= 0) throw Error(ErrorKind::invalid_parameter, "code is not prefix-free");
      int bit = cw[j] ? 1 : 0;
      if (trie_[node].child[bit] < 0) {
        trie_[node].child[bit] = static_cast<std::int32_t>(trie_.size());
        trie_.emplace_back();
      }
      node = static_cast<std::size_t>(trie_[node].child[bit]);
    }
    if (trie_[node].symbol >= 0 || trie_[node].child[0] >= 0 || trie_[node].child[1] >= 0)
      throw Error(ErrorKind::invalid_parameter, "code is not prefix-free");
    trie_[node].symbol = static_cast<std::int32_t>(i);
  }
}

std::optional<std::size_t> PrefixCode::index_of(const Symbol& symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BitString PrefixCode::encode(std::span<const Symbol> word) const {
  BitString out;
  for (const auto& s : word) {
    auto i = index_of(s);
    if (!i) throw Error(ErrorKind::alphabet_mismatch, "symbol '" + s + "' is not in the code's alphabet");
    out.append(codewords_[*i]);
  }
  return out;
}

Word PrefixCode::decode(const BitString& bits) const {
  Word out;
  for (auto i : decode_indices(bits)) out.push_back(alphabet_[i]);
  return out;
}

BitString PrefixCode::encode_indices(std::span<const std::size_t> word) const {
  BitString out;
  for (auto i : word) {
    if (i >= codewords_.size()) throw Error(ErrorKind::alphabet_mismatch, "symbol index out of range");
    out.append(codewords_[i]);
  }
  return out;
}

std::vector<std::size_t> PrefixCode::decode_indices(const BitString& bits) const {
  std::vector<std::size_t> out;
  std::size_t node = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    auto next = trie_[node].child[bits[j] ? 1 : 0];
    if (next < 0)
      throw Error(ErrorKind::truncated_stream, "bits at offset " + std::to_string(j) + " match no codeword");
    node = static_cast<std::size_t>(next);
    if (trie_[node].symbol >= 0) {
      out.push_back(static_cast<std::size_t>(trie_[node].symbol));
      node = 0;
    }
  }
  if (node != 0) throw Error(ErrorKind::truncated_stream, "stream ends inside a codeword");
  return out;
}

std::uint64_t PrefixCode::weighted_length(std::span<const std::uint64_t> counts) const {
  if (counts.size() != codewords_.size()) throw Error(ErrorKind::alphabet_mismatch, "count vector size mismatch");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) total += counts[i] * codewords_[i].size();
  return total;
}

std::string PrefixCode::to_json() const {
  // nlohmann::ordered_json keeps alphabet order in the output.
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < alphabet_.size(); ++i) j[alphabet_[i]] = codewords_[i].to_string();
  return j.dump();
}

PrefixCode PrefixCode::from_json(std::string_view text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_format, std::string("prefix code JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::invalid_format, "prefix code JSON must be an object");
  std::vector<Symbol> alphabet;
  std::vector<BitString> codewords;
  for (auto& [k, v] : j.items()) {
    if (!v.is_string()) throw Error(ErrorKind::invalid_format, "codeword for '" + k + "' must be a string");
    alphabet.push_back(k);
    codewords.push_back(BitString::from_text(v.get<std::string>()));
  }
  return PrefixCode(std::move(alphabet), std::move(codewords));
}

// --- Huffman ------------------------------------------------------------------

std::vector<unsigned> huffman_lengths(std::span<const std::uint64_t> counts) {
  const std::size_t s = counts.size();
  if (s == 0) throw Error(ErrorKind::empty_source, "no symbols");
  if (s == 1) return {1u};

  // Subtrees are ordered by (weight, smallest symbol index). Subtrees hold
  // disjoint symbol sets, so comparing their minima is the same as comparing
  // the sorted sets lexicographically.
  struct Node {
    unsigned __int128 weight;
    std::size_t min_symbol;
    std::size_t id;
  };
  auto heavier = [](const Node& a, const Node& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.min_symbol > b.min_symbol;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(heavier)> queue(heavier);
  std::vector<std::size_t> parent(2 * s - 1, 0);
  for (std::size_t i = 0; i < s; ++i) queue.push({counts[i], i, i});

  std::size_t next_id = s;
  while (queue.size() > 1) {
    Node a = queue.top();
    queue.pop();
    Node b = queue.top();
    queue.pop();
    parent[a.id] = next_id;
    parent[b.id] = next_id;
    queue.push({a.weight + b.weight, std::min(a.min_symbol, b.min_symbol), next_id});
    ++next_id;
  }

  const std::size_t root = next_id - 1;
  std::vector<unsigned> depth(2 * s - 1, 0);
  for (std::size_t id = root; id-- > 0;) depth[id] = depth[parent[id]] + 1;
  return {depth.begin(), depth.begin() + static_cast<std::ptrdiff_t>(s)};
}

PrefixCode huffman_build(const FrequencyTable& freqs) {
  if (freqs.symbols.size() != freqs.counts.size())
    throw Error(ErrorKind::invalid_parameter, "frequency table symbols and counts differ in size");
  if (std::none_of(freqs.counts.begin(), freqs.counts.end(), [](auto c) { return c > 0; }))
    throw Error(ErrorKind::empty_source, "all counts are zero");
  auto lengths = huffman_lengths(freqs.counts);
  return PrefixCode(freqs.symbols, canonical_codewords(lengths));
}

// --- Packing ------------------------------------------------------------------

BitString pair_pack_unary(std::span<const BitString> parts, const BitString& tail) {
  BitString out;
  for (const auto& u : parts) {
    out.append_repeated(true, u.size());
    out.push_back(false);
    out.append(u);
  }
  out.append(tail);
  return out;
}

Packed pair_unpack_unary(const BitString& bits, std::size_t part_count) {
  BitReader r(bits);
  Packed p;
  for (std::size_t i = 0; i < part_count; ++i) {
    std::size_t len = 0;
    for (;;) {
      if (r.at_end()) throw Error(ErrorKind::malformed_packing, "unary header of part " + std::to_string(i) + " never terminates");
      if (!r.read()) break;
      ++len;
    }
    if (len > r.remaining())
      throw Error(ErrorKind::malformed_packing, "part " + std::to_string(i) + " runs past the end");
    p.parts.push_back(r.read_bits(len));
  }
  p.tail = r.read_bits(r.remaining());
  return p;
}

void write_len_part(const BitString& part, BitString& out) {
  auto beta = BitString::binary(part.size());
  out.append_repeated(true, beta.size());
  out.push_back(false);
  out.append(beta);
  out.append(part);
}

BitString read_len_part(BitReader& r) {
  std::size_t beta_len = 0;
  for (;;) {
    if (r.at_end()) throw Error(ErrorKind::malformed_packing, "length header never terminates");
    if (!r.read()) break;
    ++beta_len;
  }
  if (beta_len > r.remaining() || beta_len > 63)
    throw Error(ErrorKind::malformed_packing, "length field runs past the end");
  auto beta = r.read_bits(beta_len);
  if (!beta.empty() && !beta[0]) throw Error(ErrorKind::malformed_packing, "length field has a leading zero");
  auto len = beta.to_uint();
  if (len > r.remaining()) throw Error(ErrorKind::malformed_packing, "part runs past the end");
  return r.read_bits(len);
}

BitString pair_pack_len(std::span<const BitString> parts, const BitString& tail) {
  BitString out;
  for (const auto& u : parts) write_len_part(u, out);
  out.append(tail);
  return out;
}

Packed pair_unpack_len(const BitString& bits, std::size_t part_count) {
  BitReader r(bits);
  Packed p;
  for (std::size_t i = 0; i < part_count; ++i) p.parts.push_back(read_len_part(r));
  p.tail = r.read_bits(r.remaining());
  return p;
}

}  // namespace kolmo
