#pragma once

// Seeded inputs shared by the unit and acceptance suites.

#include <random>
#include <string>

#include "kolmo/ncd.hpp"

namespace fixture {

/// `length` bytes of coin flips with P(1) = p, eight flips per byte, first
/// flip in the high bit.
inline kolmo::Bytes biased_bytes(std::mt19937_64& rng, double p, std::size_t length) {
  std::bernoulli_distribution coin(p);
  kolmo::Bytes out(length);
  for (auto& b : out)
    for (int bit = 0; bit < 8; ++bit) b = static_cast<std::uint8_t>((b << 1) | (coin(rng) ? 1 : 0));
  return out;
}

/// Three items from a p=0.1 coin (a0..a2) and three from p=0.9 (b0..b2).
inline kolmo::Corpus planted_corpus(std::uint64_t seed, std::size_t per_group = 3,
                                    std::size_t length = 4096) {
  std::mt19937_64 rng(seed);
  kolmo::Corpus corpus;
  for (std::size_t i = 0; i < per_group; ++i)
    corpus.push_back({"a" + std::to_string(i), biased_bytes(rng, 0.1, length)});
  for (std::size_t i = 0; i < per_group; ++i)
    corpus.push_back({"b" + std::to_string(i), biased_bytes(rng, 0.9, length)});
  return corpus;
}

inline bool same_group(const std::string& a, const std::string& b) { return a[0] == b[0]; }

}  // namespace fixture

#include <vector>

#include "kolmo/ngd.hpp"

namespace fixture {

/// Documents about two topics: fruit terms co-occur with each other and
/// engine terms with each other; a few documents mention one term of each.
inline std::vector<kolmo::Document> topic_documents(std::uint64_t seed, std::size_t count = 60) {
  const std::vector<std::string> fruit{"apple", "banana", "cherry"}, engine{"piston", "gear", "valve"},
      filler{"the", "a", "of", "and", "with", "some", "very", "often"};
  std::mt19937_64 rng(seed);
  std::vector<kolmo::Document> docs;
  for (std::size_t i = 0; i < count; ++i) {
    std::string text;
    auto add = [&](const std::string& w) { text += w + ' ' + filler[rng() % filler.size()] + ' '; };
    if (i % 10 == 9) {
      add(fruit[rng() % 3]);
      add(engine[rng() % 3]);
    } else {
      const auto& topic = i % 2 ? engine : fruit;
      for (const auto& t : topic)
        if (rng() % 4 != 0) add(t);
    }
    docs.push_back({"d" + std::to_string(100 + i), text});
  }
  return docs;
}

inline bool same_topic(const std::string& a, const std::string& b) {
  auto fruit = [](const std::string& t) { return t == "apple" || t == "banana" || t == "cherry"; };
  return fruit(a) == fruit(b);
}

}  // namespace fixture
