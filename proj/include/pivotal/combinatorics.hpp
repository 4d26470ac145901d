#pragma once

#include <cstdint>
#include <vector>

#include "pivotal/big_count.hpp"

namespace pivotal {

/// Natural logarithm of a positive count. Carrier for the large-N paths
/// where exact values would have millions of digits.
struct LogValue {
  double log_value = 0.0;
};

/// C(n, k); zero outside 0 <= k <= n.
BigCount binomial(std::uint64_t n, std::int64_t k);

/// Dense expansion of (x^2 + x + 1)^n, one multiplication per advance().
/// coefficient(k) is the coefficient of x^(n+k).
class TrinomialExpansion {
 public:
  TrinomialExpansion();

  std::uint64_t power() const { return power_; }
  void advance();
  BigCount coefficient(std::int64_t k) const;  // zero for |k| > power()
  std::vector<BigCount> row() const;           // k = -n .. n

 private:
  std::uint64_t power_ = 0;
  std::vector<mpz_class> coeffs_;  // index j holds x^j
  std::vector<mpz_class> scratch_;
};

/// Coefficient of x^(n+k) in (x^2 + x + 1)^n, by dense expansion of the
/// polynomial. O(n^2) big-integer additions: reference path, meant for
/// n up to a few thousand.
BigCount trinomial(std::uint64_t n, std::int64_t k);

/// All of row n, k = -n .. n.
std::vector<BigCount> trinomial_row(std::uint64_t n);

/// Central trinomial coefficient (n 0)_2 through the three-term recurrence
///   m T(m) = (2m - 1) T(m - 1) + 3 (m - 1) T(m - 2),   T(0) = T(1) = 1.
BigCount central_trinomial(std::uint64_t n);

/// (n 1)_2 = (T(n + 1) - T(n)) / 2.
BigCount next_central_trinomial(std::uint64_t n);

/// Both coefficients of one row from a single recurrence pass.
struct CentralPair {
  BigCount central;       // (n 0)_2
  BigCount next_central;  // (n 1)_2
};
CentralPair central_trinomial_pair(std::uint64_t n);

/// ln C(n, k), requires k <= n. Uses the Stirling decomposition with
/// explicit remainder terms so the leading terms never cancel, which keeps
/// the absolute error near 1e-12 even when ln C(n, k) is in the thousands.
LogValue log_binomial(std::uint64_t n, std::uint64_t k);

/// ln(C(n, k) / 2^n), the log of a fair-coin binomial probability. Near the
/// centre the two ~n ln 2 sized terms are folded into log1p so the result
/// keeps full relative precision even for n around 1e8.
LogValue log_binomial_half_pmf(std::uint64_t n, std::uint64_t k);

/// ln(m!) - [m ln m - m + ln(2 pi m) / 2], the Stirling remainder.
double stirling_remainder(std::uint64_t m);

/// Leading-order asymptotic forms of the central trinomials:
///   (n 0)_2 ~ sqrt(3)/2 * C(2n, n) (3/4)^n
///   (n 1)_2 ~ sqrt(3)/6 * C(2n+2, n+1) (3/4)^(n+1)
/// Each carries a 1 + O(1/n) relative error. Require n >= 1.
LogValue log_central_trinomial_asymptotic(std::uint64_t n);
LogValue log_next_central_trinomial_asymptotic(std::uint64_t n);

}  // namespace pivotal
