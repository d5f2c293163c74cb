#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kolmo/bitstring.hpp"
#include "kolmo/coding.hpp"
#include "kolmo/compressors.hpp"

namespace kolmo {

/// A family of critical regions V_0 ⊇ V_1 ⊇ ...; `member(m, x)` says x ∈ V_m.
struct CriticalRegionTest {
  std::string name;
  std::function<bool(unsigned, const BitString&)> member;
};

/// V_m: strings whose first m bits exist and are all zero.
bool test_zero_prefix(unsigned m, const BitString& x);

/// V_m: |x| >= 2m and the length-m prefix is the reverse of the length-m
/// suffix (the ends a palindrome would have).
bool test_mirror_ends(unsigned m, const BitString& x);

/// V_m: number of zeros <= (alpha + (1 - alpha) 2^-m) |x| / 2, evaluated
/// exactly. Throws invalid_parameter unless 0 < alpha < 1.
bool test_zero_excess(const Rational& alpha, unsigned m, const BitString& x);

CriticalRegionTest zero_prefix_test();
CriticalRegionTest mirror_ends_test();
CriticalRegionTest zero_excess_test(const Rational& alpha);

/// Looks up "zero-prefix", "mirror-ends" or "zero-excess".
CriticalRegionTest make_test(const std::string& name, const Rational& alpha = Rational(2, 3));

inline constexpr unsigned kMaxCensusLength = 16;

struct CensusLevel {
  unsigned m = 0;
  std::uint64_t members = 0;
  std::uint64_t total = 0;
  Rational proportion() const { return Rational(members, total); }
};

struct CensusReport {
  std::string test;
  unsigned n = 0;
  std::vector<CensusLevel> levels;  // m = 0 .. max_level

  /// {test, n, levels: [{m, members, total}]}
  std::string to_json() const;
};

/// Exhaustive count of V_m ∩ {0,1}^n for m = 0..max_level. Enumeration is
/// split across `workers` threads; the counts are summed, so the result does
/// not depend on the split. Throws resource_limit for n > kMaxCensusLength.
CensusReport census(const CriticalRegionTest& test, unsigned n, unsigned max_level, unsigned workers = 1);

/// Largest gamma with proportion(m) <= 2^(-gamma m) at every level m >= 1.
double fit_gamma(const CensusReport& report);

/// 8|x| - C(x) - 1: how many bits the codec saves, less one. Negative when
/// the codec's overhead exceeds its savings.
std::int64_t deficiency(const Codec& codec, ByteView x);

/// How a length-n bit string is handed to a byte codec.
enum class BitPacking {
  packed,       // 8 bits per byte, first bit most significant, zero padded
  byte_per_bit  // one byte (0 or 1) per bit
};

Bytes pack_bits(const BitString& bits, BitPacking packing);
std::uint64_t raw_bits(unsigned n, BitPacking packing);

struct IncompressibilityRow {
  std::uint64_t c = 0;
  std::uint64_t compressible = 0;  // #{x : size(x) < N - c}
  BigInt bound;                    // 2^(N-c) - 1
  bool within_bound() const { return BigInt(compressible) <= bound; }
};

struct IncompressibilityReport {
  std::string source;
  unsigned n = 0;          // string length in bits
  std::uint64_t raw = 0;   // N, raw size the sizes are compared with
  std::uint64_t total = 0; // 2^n
  std::vector<IncompressibilityRow> rows;  // c = 0 .. N

  /// Proportion of strings that are NOT c-compressible, as an exact rational.
  Rational incompressible_fraction(std::uint64_t c) const;
  bool all_within_bound() const;
  std::string to_json() const;
};

using SizeFunction = std::function<std::uint64_t(const BitString&)>;

/// Exhaustive census over {0,1}^n of sizes below N - c, for every c.
IncompressibilityReport incompressibility_census(const std::string& source, const SizeFunction& size, unsigned n,
                                                 std::uint64_t raw, unsigned workers = 1);

/// Same, with the codec applied to pack_bits(x, packing).
IncompressibilityReport incompressibility_census(const Codec& codec, unsigned n,
                                                 BitPacking packing = BitPacking::packed, unsigned workers = 1);

}  // namespace kolmo
