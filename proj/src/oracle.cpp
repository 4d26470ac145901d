#include "pivotal/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "pivotal/errors.hpp"

namespace pivotal::oracle {

bool is_decisive(std::uint64_t yes, std::uint64_t no) {
  const bool passes_with_yes = yes + 1 > no;
  const bool passes_with_no = yes > no + 1;
  return passes_with_yes && !passes_with_no;
}

Rational enumerate_pivot_probability(std::uint64_t n_others, VotingScheme scheme) {
  const std::uint64_t base = outcome_base(scheme);
  const std::uint64_t cap =
      scheme == VotingScheme::Binary ? kMaxEnumerateBinary : kMaxEnumerateTernary;
  if (n_others > cap) {
    throw ResourceRefused("enumeration refused for N=" + std::to_string(n_others) + " (cap " +
                          std::to_string(cap) + " for " + std::string(to_string(scheme)) + ")");
  }

  // Odometer over the others' ballots: 0 = yes, 1 = no, 2 = abstain.
  std::vector<std::uint8_t> ballots(n_others, 0);
  std::uint64_t yes = n_others;
  std::uint64_t no = 0;
  std::uint64_t decisive = 0;
  std::uint64_t outcomes = 0;
  while (true) {
    ++outcomes;
    if (is_decisive(yes, no)) ++decisive;

    std::size_t i = 0;
    for (; i < ballots.size(); ++i) {
      const std::uint8_t old = ballots[i];
      if (old == 0) --yes;
      if (old == 1) --no;
      const auto next = static_cast<std::uint8_t>(old + 1U == base ? 0 : old + 1);
      ballots[i] = next;
      if (next == 0) ++yes;
      if (next == 1) ++no;
      if (next != 0) break;  // no carry
    }
    if (i == ballots.size()) break;  // wrapped around
  }
  return Rational(BigCount{decisive}, BigCount{outcomes});
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("PIVOTAL_THREADS")) {
    unsigned value = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc{} && ptr == end && value > 0) return value;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

std::uint64_t run_shard(std::uint64_t n_others, VotingScheme scheme, std::uint64_t samples,
                        std::uint64_t seed, std::uint64_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
  std::mt19937_64 rng(seq);
  const double p_yes = scheme == VotingScheme::Binary ? 0.5 : 1.0 / 3.0;
  std::binomial_distribution<std::uint64_t> yes_draw(n_others, p_yes);

  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t yes = yes_draw(rng);
    std::uint64_t no = n_others - yes;
    if (scheme == VotingScheme::Ternary && no > 0) {
      // Given the yes count, each remaining voter is equally likely to say no or abstain.
      no = std::binomial_distribution<std::uint64_t>(no, 0.5)(rng);
    }
    if (is_decisive(yes, no)) ++hits;
  }
  return hits;
}

}  // namespace

McEstimate monte_carlo_pivot(std::uint64_t n_others, VotingScheme scheme, std::uint64_t samples,
                             std::uint64_t seed, unsigned threads) {
  if (samples == 0) throw ContractViolation("monte_carlo_pivot needs at least one sample");
  if (threads == 0) threads = default_thread_count();

  const std::uint64_t shards = (samples + kShardSamples - 1) / kShardSamples;
  std::vector<std::uint64_t> hits(shards, 0);
  auto shard_size = [&](std::uint64_t i) {
    return i + 1 == shards ? samples - i * kShardSamples : kShardSamples;
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, shards));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < shards; ++i) {
      hits[i] = run_shard(n_others, scheme, shard_size(i), seed, i);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t i = next++; i < shards; i = next++) {
          hits[i] = run_shard(n_others, scheme, shard_size(i), seed, i);
        }
      });
    }
  }

  McEstimate est;
  for (const auto h : hits) est.decisive += h;
  est.samples = samples;
  est.seed = seed;
  est.mean = static_cast<double>(est.decisive) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(samples));
  return est;
}

}  // namespace pivotal::oracle
