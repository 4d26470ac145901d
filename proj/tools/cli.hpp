#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pivotal/big_count.hpp"
#include "pivotal/power.hpp"

namespace pivotal::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kResourceRefused = 3,
};

// Entry point behind the `pivotal` binary. Subcommands: power, figure,
// allocate, verify.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// One row of `power` or `figure` output. rel_dev = |power / approx - 1|.
struct OutputRecord {
  std::uint64_t population = 0;  // N + 1
  VotingScheme scheme = VotingScheme::Ternary;
  Method method = Method::ExactRational;
  double power = 0.0;
  std::optional<double> approx;
  std::optional<double> rel_dev;
  std::optional<std::string> exact;  // p/q when the value is an exact rational
};

OutputRecord make_record(const PowerResult& result);

/// `points` log-spaced integers from pop_min to pop_max; endpoints exact.
std::vector<std::uint64_t> log_spaced_populations(std::uint64_t pop_min, std::uint64_t pop_max,
                                                  std::uint64_t points);

/// Exact ternary power (double-precision recurrence) against the square-root
/// law for every population.
std::vector<OutputRecord> figure_records(const std::vector<std::uint64_t>& populations);

struct VerifyOptions {
  std::uint64_t max_n_binary = 20;
  std::uint64_t max_n_ternary = 13;
  std::uint64_t mc_n = 100;
  std::uint64_t mc_samples = 100'000;  // 0 skips the Monte Carlo checks
  std::uint64_t seed = 1;
  // Analytic path under test; defaults to power(n, scheme, ForceExact).
  std::function<Rational(std::uint64_t, VotingScheme)> analytic;
};

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

}  // namespace pivotal::cli
