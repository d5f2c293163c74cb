#include <gtest/gtest.h>

#include <random>

#include "kolmo/error.hpp"
#include "kolmo/randomness.hpp"
#include "kolmo/toy_k.hpp"

using namespace kolmo;

namespace {

Rational pow2_neg(unsigned m) { return Rational(BigInt(1), BigInt(1) << m); }

BitString bits(const char* s) { return BitString::from_text(s); }

}  // namespace

TEST(ZeroPrefix, Membership) {
  EXPECT_TRUE(test_zero_prefix(0, bits("")));
  EXPECT_TRUE(test_zero_prefix(0, bits("111")));
  EXPECT_TRUE(test_zero_prefix(3, bits("00010")));
  EXPECT_FALSE(test_zero_prefix(3, bits("0101")));
  EXPECT_FALSE(test_zero_prefix(3, bits("00")));
}

TEST(ZeroPrefix, CensusIsExactlyPowersOfTwo) {
  for (unsigned n = 0; n <= 14; ++n) {
    auto r = census(zero_prefix_test(), n, n, 2);
    ASSERT_EQ(r.levels.size(), n + 1);
    for (const auto& level : r.levels) ASSERT_EQ(level.proportion(), pow2_neg(level.m)) << n;
  }
}

TEST(MirrorEnds, Membership) {
  EXPECT_TRUE(test_mirror_ends(0, bits("")));
  EXPECT_TRUE(test_mirror_ends(2, bits("0110")));
  EXPECT_TRUE(test_mirror_ends(2, bits("100001")));
  EXPECT_FALSE(test_mirror_ends(2, bits("100010")));
  EXPECT_FALSE(test_mirror_ends(3, bits("10101")));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto half = BitString::from_uint(rng(), 6);
    BitString pal = half;
    for (std::size_t k = 6; k-- > 0;) pal.push_back(half[k]);
    for (unsigned m = 0; m <= 6; ++m) ASSERT_TRUE(test_mirror_ends(m, pal));
  }
}

TEST(MirrorEnds, MeasuredProportionIsTwoToMinusM) {
  auto r = census(mirror_ends_test(), 12, 6, 3);
  for (const auto& level : r.levels) {
    EXPECT_EQ(level.proportion(), pow2_neg(level.m));
    if (level.m > 0) EXPECT_NE(level.proportion(), pow2_neg(2 * level.m));
  }
}

TEST(ZeroExcess, Membership) {
  Rational alpha(2, 3);
  // Level 0 admits up to n/2 zeros.
  EXPECT_TRUE(test_zero_excess(alpha, 0, bits("0011")));
  EXPECT_FALSE(test_zero_excess(alpha, 0, bits("0001")));
  for (unsigned m = 0; m < 40; ++m) EXPECT_TRUE(test_zero_excess(alpha, m, bits("111111")));
  // Limit threshold: zeros <= alpha n / 2 = 2 for n = 6.
  EXPECT_TRUE(test_zero_excess(alpha, 60, bits("001111")));
  EXPECT_FALSE(test_zero_excess(alpha, 60, bits("000111")));
  EXPECT_THROW(test_zero_excess(Rational(0), 1, bits("0")), Error);
  EXPECT_THROW(test_zero_excess(Rational(1), 1, bits("0")), Error);
}

TEST(ZeroExcess, CensusDecaysGeometrically) {
  auto r = census(zero_excess_test(Rational(2, 3)), 14, 14);
  for (std::size_t i = 1; i < r.levels.size(); ++i) EXPECT_LE(r.levels[i].members, r.levels[i - 1].members);
  double gamma = fit_gamma(r);
  std::cout << "[ census ] zero-excess n=14 alpha=2/3 fitted gamma " << gamma << '\n';
  EXPECT_GT(gamma, 0.0);
  for (const auto& level : r.levels)
    if (level.m > 0)
      EXPECT_LE(static_cast<double>(level.proportion()), std::exp2(-gamma * level.m) * (1 + 1e-12));
}

TEST(Tests, AreNested) {
  std::vector<CriticalRegionTest> tests{zero_prefix_test(), mirror_ends_test(), zero_excess_test(Rational(2, 3)),
                                        zero_excess_test(Rational(1, 5))};
  for (const auto& t : tests)
    for (unsigned n = 0; n <= 12; ++n)
      for (const auto& x : all_bitstrings(n))
        for (unsigned m = 0; m < n; ++m)
          if (t.member(m + 1, x)) ASSERT_TRUE(t.member(m, x)) << t.name << " " << x.to_string() << " m=" << m;
}

TEST(Census, WorkerCountDoesNotMatter) {
  auto t = make_test("zero-excess", Rational(3, 4));
  auto a = census(t, 13, 8, 1);
  for (unsigned w : {2u, 5u, 16u}) {
    auto b = census(t, 13, 8, w);
    for (std::size_t i = 0; i < a.levels.size(); ++i) ASSERT_EQ(a.levels[i].members, b.levels[i].members);
  }
  EXPECT_NE(a.to_json().find("\"levels\""), std::string::npos);
  EXPECT_THROW(census(t, 17, 2), Error);
  EXPECT_THROW(make_test("nope"), Error);
}

TEST(Deficiency, Examples) {
  Huff0Codec h;
  EXPECT_EQ(deficiency(h, {}), -9);
  Bytes same(1024, 'q');
  auto d = deficiency(h, same);
  EXPECT_EQ(d, 8 * 1024 - (8 + 40 + 1024) - 1);
  std::mt19937_64 rng(77);
  int low = 0;
  for (int i = 0; i < 1000; ++i) {
    Bytes x(1024);
    for (auto& b : x) b = static_cast<std::uint8_t>(rng());
    if (deficiency(h, x) <= 0) ++low;
  }
  std::cout << "[ deficiency ] random 1 KiB with deficiency <= 0: " << low << "/1000\n";
  EXPECT_GE(low, 990);
}

TEST(Deficiency, CompressibleFamiliesScoreHigher) {
  Huff0Codec h;
  std::mt19937_64 rng(78);
  const std::size_t n = 2048;
  auto mean = [&](auto make) {
    double total = 0;
    for (int i = 0; i < 100; ++i) total += static_cast<double>(deficiency(h, make()));
    return total / 100;
  };
  auto uniform = [&] {
    Bytes x(n);
    for (auto& b : x) b = static_cast<std::uint8_t>(rng());
    return x;
  };
  auto zero_left = [&] {
    Bytes x(n, 0);
    for (std::size_t i = n / 2; i < n; ++i) x[i] = static_cast<std::uint8_t>(rng());
    return x;
  };
  auto palindrome = [&] {
    Bytes x(n);
    for (std::size_t i = 0; i < n / 2; ++i) x[i] = x[n - 1 - i] = static_cast<std::uint8_t>(rng() % 128);
    return x;
  };
  auto biased = [&] {
    Bytes x(n);
    std::geometric_distribution<int> g(0.3);
    for (auto& b : x) b = static_cast<std::uint8_t>(std::min(g(rng), 255));
    return x;
  };
  double base = mean(uniform);
  double zl = mean(zero_left), pal = mean(palindrome), bia = mean(biased);
  std::cout << "[ deficiency ] uniform " << base << ", 0^n u " << zl << ", palindrome " << pal << ", biased " << bia
            << '\n';
  EXPECT_GT(zl, base);
  EXPECT_GT(pal, base);
  EXPECT_GT(bia, base);
}

TEST(Incompressibility, IdentityCompressesNothing) {
  IdentityCodec id;
  auto r = incompressibility_census(id, 10, BitPacking::byte_per_bit);
  EXPECT_EQ(r.raw, 80u);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(row.within_bound());
    if (row.c >= 1) EXPECT_EQ(row.compressible, 0u);
  }
  EXPECT_EQ(r.incompressible_fraction(0), Rational(1));
}

TEST(Incompressibility, Huff0ByteSymbols) {
  Huff0Codec h;
  auto r = incompressibility_census(h, 14, BitPacking::byte_per_bit, 2);
  EXPECT_EQ(r.raw, 112u);
  EXPECT_TRUE(r.all_within_bound());
  EXPECT_EQ(r.rows.size(), 113u);
}

TEST(Incompressibility, PackedBitsAndToyMachine) {
  Huff0Codec h;
  for (unsigned n = 1; n <= 12; ++n) {
    auto r = incompressibility_census(h, n, BitPacking::packed);
    ASSERT_EQ(r.raw, n);
    ASSERT_TRUE(r.all_within_bound());
    auto t = incompressibility_census("toy", [](const BitString& x) { return k_exact(x); }, n, n);
    ASSERT_TRUE(t.all_within_bound());
    for (const auto& row : t.rows)
      ASSERT_GE(t.incompressible_fraction(row.c), Rational(1) - pow2_neg(static_cast<unsigned>(row.c)));
  }
  EXPECT_THROW(incompressibility_census(h, 17), Error);
}

TEST(Packing, Layouts) {
  auto b = pack_bits(bits("1010000011"), BitPacking::packed);
  EXPECT_EQ(b, (Bytes{0xa0, 0xc0}));
  EXPECT_EQ(pack_bits(bits("101"), BitPacking::byte_per_bit), (Bytes{1, 0, 1}));
  EXPECT_EQ(raw_bits(10, BitPacking::packed), 10u);
  EXPECT_EQ(raw_bits(10, BitPacking::byte_per_bit), 80u);
}
