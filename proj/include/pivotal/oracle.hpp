#pragma once

#include <cstdint>

#include "pivotal/big_count.hpp"
#include "pivotal/power.hpp"

namespace pivotal::oracle {

// Verification engines. Nothing here calls into the combinatorics or the
// analytic power formulas; they only simulate the vote.

inline constexpr std::uint64_t kMaxEnumerateBinary = 22;
inline constexpr std::uint64_t kMaxEnumerateTernary = 14;

/// Focal voter is decisive iff the motion (strictly more yes than no)
/// passes when they vote yes and fails when they vote no, given the tallies
/// of the other voters.
bool is_decisive(std::uint64_t yes, std::uint64_t no);

/// Sweeps every one of base^N outcomes of the other voters. Throws
/// ResourceRefused above kMaxEnumerate{Binary,Ternary}.
Rational enumerate_pivot_probability(std::uint64_t n_others, VotingScheme scheme);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t decisive = 0;  // raw hit count
};

/// Samples are split into fixed-size shards of kShardSamples; shard i draws
/// from std::mt19937_64 seeded with seed_seq{seed lo, seed hi, i lo, i hi}.
/// Per sample only the tallies are drawn: yes ~ Bin(N, 1/base) and
/// no ~ Bin(N - yes, 1/2) (ternary), or no = N - yes (binary). Shards are
/// summed as integers so the result does not depend on the thread count.
inline constexpr std::uint64_t kShardSamples = 1 << 16;

McEstimate monte_carlo_pivot(std::uint64_t n_others, VotingScheme scheme, std::uint64_t samples,
                             std::uint64_t seed, unsigned threads = 0);

/// Worker count: PIVOTAL_THREADS when set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1).
unsigned default_thread_count();

}  // namespace pivotal::oracle
