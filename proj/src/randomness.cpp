#include "kolmo/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "kolmo/error.hpp"

namespace kolmo {

bool test_zero_prefix(unsigned m, const BitString& x) {
  if (m > x.size()) return false;
  for (unsigned i = 0; i < m; ++i)
    if (x[i]) return false;
  return true;
}

bool test_mirror_ends(unsigned m, const BitString& x) {
  if (2 * std::size_t{m} > x.size()) return false;
  const std::size_t n = x.size();
  for (unsigned i = 0; i < m; ++i)
    if (x[i] != x[n - 1 - i]) return false;
  return true;
}

namespace {

void check_alpha(const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1) throw Error(ErrorKind::invalid_parameter, "alpha must lie strictly between 0 and 1");
}

}  // namespace

bool test_zero_excess(const Rational& alpha, unsigned m, const BitString& x) {
  check_alpha(alpha);
  const std::size_t zeros = x.size() - x.count_ones();
  // zeros <= (alpha + (1 - alpha) / 2^m) * n / 2, cleared of denominators.
  const BigInt p = boost::multiprecision::numerator(alpha);
  const BigInt q = boost::multiprecision::denominator(alpha);
  const BigInt scale = BigInt(1) << m;
  return BigInt(2) * zeros * q * scale <= (p * scale + (q - p)) * x.size();
}

CriticalRegionTest zero_prefix_test() { return {"zero-prefix", test_zero_prefix}; }
CriticalRegionTest mirror_ends_test() { return {"mirror-ends", test_mirror_ends}; }

CriticalRegionTest zero_excess_test(const Rational& alpha) {
  check_alpha(alpha);
  return {"zero-excess", [alpha](unsigned m, const BitString& x) { return test_zero_excess(alpha, m, x); }};
}

CriticalRegionTest make_test(const std::string& name, const Rational& alpha) {
  if (name == "zero-prefix") return zero_prefix_test();
  if (name == "mirror-ends") return mirror_ends_test();
  if (name == "zero-excess") return zero_excess_test(alpha);
  throw Error(ErrorKind::invalid_parameter, "unknown test '" + name + "'");
}

namespace {

void check_census_length(unsigned n) {
  if (n > kMaxCensusLength)
    throw Error(ErrorKind::resource_limit,
                "exhaustive census limited to n <= " + std::to_string(kMaxCensusLength) + ", got " + std::to_string(n));
}

// Runs body(first, last) over [0, 2^n) split into `workers` contiguous ranges.
template <typename Partial, typename Body>
std::vector<Partial> partition(unsigned n, unsigned workers, Body body) {
  const std::uint64_t total = std::uint64_t{1} << n;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::vector<Partial> partials(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      auto first = total * w / workers;
      auto last = total * (w + 1) / workers;
      if (w + 1 == workers)
        body(first, last, partials[w]);
      else
        pool.emplace_back([&, first, last, w] { body(first, last, partials[w]); });
    }
  }
  return partials;
}

}  // namespace

CensusReport census(const CriticalRegionTest& test, unsigned n, unsigned max_level, unsigned workers) {
  check_census_length(n);
  using Counts = std::vector<std::uint64_t>;
  auto partials = partition<Counts>(n, workers, [&](std::uint64_t first, std::uint64_t last, Counts& counts) {
    counts.assign(max_level + 1, 0);
    for (auto v = first; v < last; ++v) {
      auto x = BitString::from_uint(v, n);
      for (unsigned m = 0; m <= max_level; ++m)
        if (test.member(m, x)) ++counts[m];
    }
  });
  CensusReport r{test.name, n, {}};
  for (unsigned m = 0; m <= max_level; ++m) {
    CensusLevel level{m, 0, std::uint64_t{1} << n};
    for (const auto& p : partials) level.members += p[m];
    r.levels.push_back(level);
  }
  return r;
}

std::string CensusReport::to_json() const {
  nlohmann::ordered_json j;
  j["test"] = test;
  j["n"] = n;
  auto lv = nlohmann::ordered_json::array();
  for (const auto& l : levels) lv.push_back({{"m", l.m}, {"members", l.members}, {"total", l.total}});
  j["levels"] = lv;
  return j.dump();
}

double fit_gamma(const CensusReport& report) {
  double gamma = std::numeric_limits<double>::infinity();
  for (const auto& l : report.levels) {
    if (l.m == 0) continue;
    if (l.members == 0) continue;  // any gamma fits
    double p = static_cast<double>(l.members) / static_cast<double>(l.total);
    gamma = std::min(gamma, -std::log2(p) / l.m);
  }
  return gamma;
}

std::int64_t deficiency(const Codec& codec, ByteView x) {
  return 8 * static_cast<std::int64_t>(x.size()) - static_cast<std::int64_t>(codec.size(x).bits) - 1;
}

Bytes pack_bits(const BitString& bits, BitPacking packing) {
  Bytes out;
  if (packing == BitPacking::byte_per_bit) {
    for (std::size_t i = 0; i < bits.size(); ++i) out.push_back(bits[i] ? 1 : 0);
    return out;
  }
  out.assign((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

std::uint64_t raw_bits(unsigned n, BitPacking packing) {
  return packing == BitPacking::packed ? n : 8 * std::uint64_t{n};
}

Rational IncompressibilityReport::incompressible_fraction(std::uint64_t c) const {
  for (const auto& r : rows)
    if (r.c == c) return Rational(total - r.compressible, total);
  return 1;
}

bool IncompressibilityReport::all_within_bound() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.within_bound(); });
}

std::string IncompressibilityReport::to_json() const {
  nlohmann::ordered_json j;
  j["source"] = source;
  j["n"] = n;
  j["raw_bits"] = raw;
  j["total"] = total;
  auto rs = nlohmann::ordered_json::array();
  for (const auto& r : rows)
    rs.push_back({{"c", r.c}, {"compressible", r.compressible}, {"bound", r.bound.str()}, {"within_bound", r.within_bound()}});
  j["rows"] = rs;
  return j.dump();
}

IncompressibilityReport incompressibility_census(const std::string& source, const SizeFunction& size, unsigned n,
                                                 std::uint64_t raw, unsigned workers) {
  check_census_length(n);
  // hist[s] = number of strings of size s, with sizes >= raw lumped together.
  using Hist = std::vector<std::uint64_t>;
  auto partials = partition<Hist>(n, workers, [&](std::uint64_t first, std::uint64_t last, Hist& hist) {
    hist.assign(raw + 1, 0);
    for (auto v = first; v < last; ++v) ++hist[std::min(size(BitString::from_uint(v, n)), raw)];
  });
  Hist hist(raw + 1, 0);
  for (const auto& p : partials)
    for (std::size_t s = 0; s <= raw; ++s) hist[s] += p[s];

  IncompressibilityReport r{source, n, raw, std::uint64_t{1} << n, {}};
  // #{size < raw - c} = sum of hist[s] for s < raw - c.
  std::vector<std::uint64_t> below(raw + 1, 0);
  for (std::size_t s = 1; s <= raw; ++s) below[s] = below[s - 1] + hist[s - 1];
  for (std::uint64_t c = 0; c <= raw; ++c) {
    IncompressibilityRow row;
    row.c = c;
    row.compressible = below[raw - c];
    row.bound = (BigInt(1) << (raw - c)) - 1;
    r.rows.push_back(row);
  }
  return r;
}

IncompressibilityReport incompressibility_census(const Codec& codec, unsigned n, BitPacking packing, unsigned workers) {
  return incompressibility_census(
      codec.name(), [&](const BitString& x) { return codec.size(pack_bits(x, packing)).bits; }, n,
      raw_bits(n, packing), workers);
}

}  // namespace kolmo
