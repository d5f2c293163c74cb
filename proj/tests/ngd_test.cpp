#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "kolmo/error.hpp"
#include "kolmo/ngd.hpp"

using namespace kolmo;

namespace {

HitIndex four_docs() {
  return HitIndex::build({{"1", "x y shared"}, {"2", "X, y! shared"}, {"3", "z w"}, {"4", "z w w w"}});
}

}  // namespace

TEST(Tokenize, LowercasesAlphanumericRuns) {
  EXPECT_EQ(tokenize("Hello, World-42!  x"), (std::vector<std::string>{"hello", "world", "42", "x"}));
  EXPECT_TRUE(tokenize(" ,;").empty());
}

TEST(HitIndex, Counts) {
  auto idx = four_docs();
  EXPECT_EQ(idx.document_count(), 4u);
  EXPECT_EQ(idx.hits("x"), 2u);
  EXPECT_EQ(idx.hits("w"), 2u);  // once per document
  EXPECT_EQ(idx.hits("missing"), 0u);
  std::vector<std::string> xz{"x", "z"}, xy{"x", "y"};
  EXPECT_EQ(idx.hits(xz), 0u);
  EXPECT_EQ(idx.hits(xy), 2u);
  EXPECT_EQ(idx.documents_with("z"), (std::vector<std::uint32_t>{2, 3}));
}

TEST(HitIndex, EmptyDocumentsCountTowardsM) {
  auto idx = HitIndex::build({{"a", "apple"}, {"b", ""}, {"c", "  "}});
  EXPECT_EQ(idx.document_count(), 3u);
  EXPECT_EQ(idx.hits("apple"), 1u);
  EXPECT_THROW(HitIndex::build({}), Error);
}

TEST(HitIndex, PhraseMatching) {
  auto idx = HitIndex::build({{"a", "New York city"}, {"b", "york new"}, {"c", "new, york"}});
  EXPECT_EQ(idx.documents_with("new york"), (std::vector<std::uint32_t>{0, 2}));
  EXPECT_EQ(idx.hits("New York City"), 1u);
  EXPECT_EQ(idx.hits(""), 0u);
}

TEST(HitIndex, DeterministicAndSerializable) {
  auto docs = fixture::topic_documents(5);
  auto a = HitIndex::build(docs), b = HitIndex::build(docs);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.to_json(), b.to_json());
  auto back = HitIndex::from_json(a.to_json());
  EXPECT_EQ(back, a);
  EXPECT_EQ(back.hits("apple"), a.hits("apple"));
  EXPECT_THROW(HitIndex::from_json("{\"M\": 2}"), Error);
  EXPECT_THROW(HitIndex::from_json("not json"), Error);
}

TEST(HitIndex, FromDirectory) {
  auto dir = std::filesystem::temp_directory_path() / "kolmo_ngd_docs";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "b.txt") << "horse";
  std::ofstream(dir / "a.txt") << "horse rider";
  auto idx = HitIndex::from_directory(dir);
  EXPECT_EQ(idx.document_names(), (std::vector<std::string>{"a.txt", "b.txt"}));
  EXPECT_EQ(idx.hits("rider"), 1u);
  std::filesystem::remove_all(dir);
  try {
    HitIndex::from_directory(dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ingestion);
  }
}

TEST(HitIndex, ConjunctionNeverExceedsEitherTerm) {
  auto docs = fixture::topic_documents(9);
  auto idx = HitIndex::build(docs);
  std::vector<std::string> vocab{"apple", "banana", "cherry", "piston", "gear", "valve", "the", "of", "missing"};
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> pair{vocab[rng() % vocab.size()], vocab[rng() % vocab.size()]};
    ASSERT_LE(idx.hits(pair), std::min(idx.hits(pair[0]), idx.hits(pair[1])));
  }
}

TEST(Ngd, FourDocumentExamples) {
  auto idx = four_docs();
  EXPECT_EQ(ngd(idx, "x", "y"), 0.0);
  EXPECT_TRUE(std::isinf(ngd(idx, "x", "z")));
  EXPECT_EQ(ngd(idx, "z", "z"), 0.0);
  try {
    ngd(idx, "x", "nothing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unknown_term);
  }
}

TEST(Ngd, FormulaEdgeCases) {
  EXPECT_EQ(ngd_from_counts(4, 4, 4, 4), 0.0);  // 0/0
  EXPECT_TRUE(std::isinf(ngd_from_counts(4, 4, 2, 4)));  // positive/0
  EXPECT_TRUE(std::isinf(ngd_from_counts(1, 1, 0, 8)));
  EXPECT_THROW(ngd_from_counts(0, 1, 0, 8), Error);
  EXPECT_DOUBLE_EQ(ngd_from_counts(4, 2, 1, 16), (2.0 - 0.0) / (4.0 - 1.0));
}

TEST(Ngd, HorseRiderRegression) {
  // Hit counts 156e6, 62.2e6, joint 2.66e6, with M = 8e9.
  EXPECT_NEAR(ngd_from_counts(156e6, 62.2e6, 2.66e6, 8e9), 0.838308109, 1e-9);
}

TEST(Ngd, MoreUnrelatedDocumentsLowerTheDistance) {
  std::vector<Document> docs{{"1", "x y"}, {"2", "x"}, {"3", "y"}, {"4", "x y"}, {"5", "x"}};
  double previous = ngd(HitIndex::build(docs), "x", "y");
  ASSERT_GT(previous, 0.0);
  for (int i = 0; i < 10; ++i) {
    docs.push_back({"pad" + std::to_string(i), "unrelated words"});
    double d = ngd(HitIndex::build(docs), "x", "y");
    ASSERT_LT(d, previous);
    previous = d;
  }
}

TEST(Ngd, RangeAndSelfDistance) {
  auto idx = HitIndex::build(fixture::topic_documents(13));
  std::vector<std::string> terms{"apple", "banana", "cherry", "piston", "gear", "valve", "the"};
  for (const auto& a : terms) {
    EXPECT_EQ(ngd(idx, a, a), 0.0);
    for (const auto& b : terms) {
      double d = ngd(idx, a, b);
      std::vector<std::string> pair{a, b};
      if (idx.hits(pair) == 0)
        EXPECT_TRUE(std::isinf(d));
      else
        EXPECT_GE(d, 0.0);
      EXPECT_EQ(d, ngd(idx, b, a));
    }
  }
}

TEST(NgdMatrix, TopicsSeparate) {
  auto idx = HitIndex::build(fixture::topic_documents(17));
  auto r = ngd_matrix(idx, {"apple", "banana", "cherry", "piston", "gear", "valve", "unicorn"});
  EXPECT_EQ(r.skipped, (std::vector<std::string>{"unicorn"}));
  const auto& m = r.matrix;
  ASSERT_EQ(m.size(), 6u);
  double max_within = 0, min_between = INFINITY;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      EXPECT_EQ(m.at(i, j), m.at(j, i));
      if (i == j) continue;
      if (fixture::same_topic(m.items()[i], m.items()[j]))
        max_within = std::max(max_within, m.at(i, j));
      else
        min_between = std::min(min_between, m.at(i, j));
    }
  std::cout << "[ ngd ] topics: max within " << max_within << ", min between " << min_between << '\n';
  EXPECT_LT(max_within, min_between);
  EXPECT_THROW(ngd_matrix(idx, {"apple", "unicorn"}), Error);
}

TEST(NgdMatrix, IdenticalSupportsGiveZeros) {
  auto idx = HitIndex::build({{"1", "p q r"}, {"2", "p q r"}, {"3", "s"}});
  auto r = ngd_matrix(idx, {"p", "q", "r"});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(r.matrix.at(i, j), 0.0);
}
