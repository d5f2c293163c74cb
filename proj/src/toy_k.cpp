#include "kolmo/toy_k.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "kolmo/coding.hpp"
#include "kolmo/error.hpp"

namespace kolmo {

ToyRun ref_decode(const BitString& program, std::uint64_t budget) {
  ToyRun run;
  if (program.empty()) return run;
  if (!program[0]) {
    run.cost = program.size();
    if (run.cost > budget) {
      run.status = ToyStatus::out_of_budget;
      return run;
    }
    run.status = ToyStatus::ok;
    run.output = program.slice(1, program.size() - 1);
    return run;
  }

  BitReader r(program);
  r.read();
  BitString numeral;
  std::uint64_t count = 0;
  try {
    numeral = read_len_part(r);
    count = dyadic_value(numeral);
  } catch (const Error&) {
    return run;
  }
  if (count < 2) return run;
  const std::size_t pattern_len = r.remaining();
  const std::size_t header = program.size() - pattern_len;

  const unsigned __int128 cost = static_cast<unsigned __int128>(count) * pattern_len + header;
  if (cost > budget) {
    run.status = ToyStatus::out_of_budget;
    run.cost = cost > kUnlimitedBudget ? kUnlimitedBudget : static_cast<std::uint64_t>(cost);
    return run;
  }
  run.cost = static_cast<std::uint64_t>(cost);
  auto pattern = r.read_bits(pattern_len);
  run.output.reserve(static_cast<std::size_t>(count * pattern_len));
  for (std::uint64_t i = 0; i < count; ++i) run.output.append(pattern);
  run.status = ToyStatus::ok;
  return run;
}

BitString literal_program(const BitString& x) {
  BitString p;
  p.push_back(false);
  p.append(x);
  return p;
}

BitString repeat_program(std::uint64_t count, const BitString& pattern) {
  if (count < 2) throw Error(ErrorKind::invalid_parameter, "repeat count must be at least 2");
  BitString p;
  p.push_back(true);
  write_len_part(dyadic_bits(count), p);
  p.append(pattern);
  return p;
}

namespace {

struct Candidate {
  BitString program;
  std::uint64_t cost;
};

// Every program that prints x: the literal and one repeat program per way of
// writing x as w^c, c >= 2. The 2-adic count and the length header are both
// canonical, so there are no others (for x = "" the repeat programs with an
// empty pattern are all longer and costlier than c = 2, kept as the sole
// representative).
std::vector<Candidate> candidates(const BitString& x) {
  std::vector<Candidate> out;
  out.push_back({literal_program(x), x.size() + 1});
  if (x.empty()) {
    auto p = repeat_program(2, {});
    out.push_back({p, p.size()});
    return out;
  }
  const std::size_t n = x.size();
  for (std::size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = x[i] == x[i - d];
    if (!periodic) continue;
    auto p = repeat_program(n / d, x.slice(0, d));
    out.push_back({p, p.size() - d + n});
  }
  return out;
}

}  // namespace

std::size_t k_upper(const BitString& x, std::size_t length_cap, std::uint64_t budget) {
  if (length_cap == 0) length_cap = x.size() + 1;
  std::size_t best = x.size() + 1;
  for (const auto& c : candidates(x))
    if (c.program.size() <= length_cap && c.cost <= budget) best = std::min(best, c.program.size());
  return best;
}

std::size_t k_exact(const BitString& x, std::size_t limit) {
  if (x.size() > limit)
    throw Error(ErrorKind::resource_limit,
                "exact toy complexity limited to |x| <= " + std::to_string(limit) + ", got " + std::to_string(x.size()));
  return k_upper(x, x.size() + 1, kUnlimitedBudget);
}

BitString shortest_program(const BitString& x) {
  auto cs = candidates(x);
  auto it = std::min_element(cs.begin(), cs.end(),
                             [](const auto& a, const auto& b) { return a.program.size() < b.program.size(); });
  return it->program;
}

UpperBoundTrace upper_bound_trace(const BitString& x, std::size_t length_cap) {
  if (length_cap == 0) length_cap = x.size() + 1;
  std::uint64_t horizon = x.size() + 1;
  for (const auto& c : candidates(x))
    if (c.program.size() <= length_cap) horizon = std::max(horizon, c.cost);
  UpperBoundTrace trace{x, {}};
  for (std::uint64_t t = 0; t <= horizon; ++t) trace.rows.push_back({t, k_upper(x, length_cap, t)});
  return trace;
}

std::string UpperBoundTrace::to_text() const {
  std::string out = fmt::format("{:>8}  {:>6}\n", "t", "F(x,t)");
  for (const auto& r : rows) out += fmt::format("{:>8}  {:>6}\n", r.budget, r.bound);
  return out;
}

}  // namespace kolmo
