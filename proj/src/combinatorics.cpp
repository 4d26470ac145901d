#include "pivotal/combinatorics.hpp"

#include <utility>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pivotal/errors.hpp"

namespace pivotal {

BigCount binomial(std::uint64_t n, std::int64_t k) {
  if (k < 0 || static_cast<std::uint64_t>(k) > n) return BigCount{};
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, static_cast<unsigned long>(k));
  return BigCount(std::move(out));
}

TrinomialExpansion::TrinomialExpansion() : coeffs_(1, mpz_class(1)) {}

void TrinomialExpansion::advance() {
  const std::size_t width = coeffs_.size();
  scratch_.resize(width + 2);
  for (std::size_t j = 0; j < width + 2; ++j) {
    mpz_class& c = scratch_[j];
    c = 0;
    if (j < width) c += coeffs_[j];
    if (j >= 1 && j - 1 < width) c += coeffs_[j - 1];
    if (j >= 2) c += coeffs_[j - 2];
  }
  std::swap(coeffs_, scratch_);
  ++power_;
}

BigCount TrinomialExpansion::coefficient(std::int64_t k) const {
  const auto magnitude = static_cast<std::uint64_t>(k < 0 ? -k : k);
  if (magnitude > power_) return BigCount{};
  return BigCount(coeffs_[static_cast<std::size_t>(static_cast<std::int64_t>(power_) + k)]);
}

std::vector<BigCount> TrinomialExpansion::row() const {
  std::vector<BigCount> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.emplace_back(c);
  return out;
}

namespace {

TrinomialExpansion expand_to(std::uint64_t n) {
  TrinomialExpansion poly;
  while (poly.power() < n) poly.advance();
  return poly;
}

}  // namespace

BigCount trinomial(std::uint64_t n, std::int64_t k) {
  const auto magnitude = static_cast<std::uint64_t>(k < 0 ? -k : k);
  if (magnitude > n) return BigCount{};
  return expand_to(n).coefficient(k);
}

std::vector<BigCount> trinomial_row(std::uint64_t n) { return expand_to(n).row(); }

namespace {

// T(m) for m = n and n + 1, advanced in place.
void advance_central(std::uint64_t target, mpz_class& prev, mpz_class& cur) {
  // Invariant: prev = T(m - 1), cur = T(m), starting at m = 1.
  prev = 1;
  cur = 1;
  mpz_class scratch;
  for (std::uint64_t m = 2; m <= target; ++m) {
    mpz_mul_ui(scratch.get_mpz_t(), cur.get_mpz_t(), 2 * m - 1);
    mpz_addmul_ui(scratch.get_mpz_t(), prev.get_mpz_t(), 3 * (m - 1));
    mpz_divexact_ui(scratch.get_mpz_t(), scratch.get_mpz_t(), m);
    mpz_swap(prev.get_mpz_t(), cur.get_mpz_t());
    mpz_swap(cur.get_mpz_t(), scratch.get_mpz_t());
  }
}

}  // namespace

BigCount central_trinomial(std::uint64_t n) {
  if (n <= 1) return BigCount{1};
  mpz_class prev;
  mpz_class cur;
  advance_central(n, prev, cur);
  return BigCount(std::move(cur));
}

CentralPair central_trinomial_pair(std::uint64_t n) {
  mpz_class prev;
  mpz_class cur;
  advance_central(n + 1, prev, cur);
  mpz_class next = cur - prev;
  mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), 2);
  return {BigCount(std::move(prev)), BigCount(std::move(next))};
}

BigCount next_central_trinomial(std::uint64_t n) {
  return central_trinomial_pair(n).next_central;
}

double stirling_remainder(std::uint64_t m) {
  if (m == 0) return 0.0;
  const double x = static_cast<double>(m);
  if (m <= 15) {
    // lgamma is accurate to an ulp here and the subtraction is benign.
    return std::lgamma(x + 1.0) - (x * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi * x));
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
}

LogValue log_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    throw ContractViolation("log_binomial requires k <= n (n=" + std::to_string(n) + ", k=" +
                            std::to_string(k) + ")");
  }
  if (k == 0 || k == n) return {0.0};
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double rest = static_cast<double>(n - k);
  // k ln(n/k) + (n-k) ln(n/(n-k)) written with log1p so the smaller side stays accurate.
  const double entropy = kk * std::log1p(rest / kk) + rest * std::log1p(kk / rest);
  const double gaussian = 0.5 * std::log(nn / (2.0 * std::numbers::pi * kk * rest));
  const double correction = stirling_remainder(n) - stirling_remainder(k) - stirling_remainder(n - k);
  return {entropy + gaussian + correction};
}

LogValue log_binomial_half_pmf(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    throw ContractViolation("log_binomial_half_pmf requires k <= n (n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
  }
  const double nn = static_cast<double>(n);
  if (k == 0 || k == n) return {-nn * std::numbers::ln2};
  const double kk = static_cast<double>(k);
  const double rest = static_cast<double>(n - k);
  // n - 2k is an exact integer difference, so the log1p arguments carry no cancellation.
  const double skew = static_cast<double>(static_cast<std::int64_t>(n) - 2 * static_cast<std::int64_t>(k));
  const double entropy = kk * std::log1p(skew / (2.0 * kk)) + rest * std::log1p(-skew / (2.0 * rest));
  const double gaussian = 0.5 * std::log(nn / (2.0 * std::numbers::pi * kk * rest));
  const double correction = stirling_remainder(n) - stirling_remainder(k) - stirling_remainder(n - k);
  return {entropy + gaussian + correction};
}

LogValue log_central_trinomial_asymptotic(std::uint64_t n) {
  if (n == 0) throw ContractViolation("asymptotic trinomial form needs n >= 1");
  const double v = std::log(std::sqrt(3.0) / 2.0) + log_binomial(2 * n, n).log_value +
                   static_cast<double>(n) * std::log(0.75);
  return {v};
}

LogValue log_next_central_trinomial_asymptotic(std::uint64_t n) {
  if (n == 0) throw ContractViolation("asymptotic trinomial form needs n >= 1");
  const double v = std::log(std::sqrt(3.0) / 6.0) + log_binomial(2 * (n + 1), n + 1).log_value +
                   static_cast<double>(n + 1) * std::log(0.75);
  return {v};
}

}  // namespace pivotal
