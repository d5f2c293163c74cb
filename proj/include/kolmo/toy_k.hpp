#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "kolmo/bitstring.hpp"

namespace kolmo {

// A deliberately small decoder whose program-size complexity can be found by
// exhaustive search. A program's first bit picks the mode:
//
//   0 x                 prints x
//   1 <len-part n> w    prints w repeated c times, where n is the 2-adic
//                       numeral of c (bit b is digit b+1) and c >= 2;
//                       <len-part> is the pair_pack_len header format
//
// Running costs one step per header bit and one per output bit, so a
// program p printing x costs |p| - |w| + |x| (mode 0: |p|).

inline constexpr std::uint64_t kUnlimitedBudget = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::size_t kMaxExactLength = 16;

enum class ToyStatus { ok, out_of_budget, decode_failure };

struct ToyRun {
  ToyStatus status = ToyStatus::decode_failure;
  BitString output;     // valid when status == ok
  std::uint64_t cost = 0;  // steps the run needs (0 on decode failure)
};

ToyRun ref_decode(const BitString& program, std::uint64_t budget = kUnlimitedBudget);

BitString literal_program(const BitString& x);
/// Throws invalid_parameter when count < 2.
BitString repeat_program(std::uint64_t count, const BitString& pattern);

/// min |p| over programs with |p| <= length_cap printing x within `budget`
/// steps, or |x| + 1 when none does. Pass length_cap = 0 for |x| + 1.
std::size_t k_upper(const BitString& x, std::size_t length_cap, std::uint64_t budget);

/// Shortest program length with an unlimited budget. Throws resource_limit
/// when |x| > limit.
std::size_t k_exact(const BitString& x, std::size_t limit = kMaxExactLength);

/// A shortest program for x (ties: mode 0 first, then fewer repeats).
BitString shortest_program(const BitString& x);

struct UpperBoundTrace {
  BitString x;
  struct Row {
    std::uint64_t budget;
    std::size_t bound;
  };
  std::vector<Row> rows;  // budgets 0, 1, ... up to the point of stabilization

  std::string to_text() const;
};

UpperBoundTrace upper_bound_trace(const BitString& x, std::size_t length_cap = 0);

}  // namespace kolmo
