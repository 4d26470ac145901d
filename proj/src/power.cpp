#include "pivotal/power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "pivotal/combinatorics.hpp"
#include "pivotal/errors.hpp"

namespace pivotal {

std::uint64_t outcome_base(VotingScheme scheme) {
  return scheme == VotingScheme::Binary ? 2 : 3;
}

std::string_view to_string(VotingScheme scheme) {
  return scheme == VotingScheme::Binary ? "binary" : "ternary";
}

std::optional<VotingScheme> parse_scheme(std::string_view text) {
  if (text == "binary") return VotingScheme::Binary;
  if (text == "ternary") return VotingScheme::Ternary;
  return std::nullopt;
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::ExactRational:
      return "exact";
    case Method::ExactFloat:
      return "exact-float";
    case Method::Asymptotic:
      return "asymptotic";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
  if (text == "auto") return Strategy::Auto;
  if (text == "exact") return Strategy::ForceExact;
  if (text == "asymptotic") return Strategy::ForceAsymptotic;
  return std::nullopt;
}

const Rational& Probability::rational() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw ContractViolation("probability is not exact");
}

double Probability::to_double() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->to_double();
  return std::get<double>(value_);
}

double asymptotic_constant(VotingScheme scheme) {
  const double options = scheme == VotingScheme::Binary ? 2.0 : 3.0;
  return std::sqrt(options / std::numbers::pi);
}

namespace {

void check_cap(std::uint64_t n_others, const PowerConfig& config) {
  if (n_others > config.exact_cap) {
    throw ResourceRefused("exact evaluation refused for N=" + std::to_string(n_others) +
                          " (cap " + std::to_string(config.exact_cap) +
                          "); use the asymptotic path");
  }
}

void require_positive(std::uint64_t n_others) {
  if (n_others == 0) {
    throw ContractViolation("asymptotic voting power is undefined for N=0");
  }
}

PowerResult make_exact(std::uint64_t n, VotingScheme scheme, Rational value) {
  return {n, scheme, Probability::exact(std::move(value)), Method::ExactRational, std::nullopt};
}

}  // namespace

PowerResult binary_power_exact(std::uint64_t n_others, const PowerConfig& config) {
  check_cap(n_others, config);
  const auto half = static_cast<std::int64_t>(n_others / 2);
  return make_exact(n_others, VotingScheme::Binary,
                    Rational(binomial(n_others, half), pow_u64(2, n_others)));
}

BigCount ternary_sum_via_trinomials(std::uint64_t n_others) {
  if (n_others == 0) {
    throw ContractViolation("the trinomial identity holds for N >= 1 only");
  }
  auto [central, next] = central_trinomial_pair(n_others);
  return central + next;
}

BigCount ternary_sum_direct(std::uint64_t n_others) {
  // C(N, K) and C(K, floor(K/2)) are both advanced multiplicatively in K.
  mpz_class total = 0;
  mpz_class choose_participants = 1;  // C(N, K)
  mpz_class central = 1;              // C(K, floor(K/2))
  for (std::uint64_t k = 0; k <= n_others; ++k) {
    if (k > 0) {
      mpz_mul_ui(choose_participants.get_mpz_t(), choose_participants.get_mpz_t(), n_others - k + 1);
      mpz_divexact_ui(choose_participants.get_mpz_t(), choose_participants.get_mpz_t(), k);
      if (k % 2 == 0) {
        // C(2m, m) = C(2m-1, m-1) * 2
        mpz_mul_2exp(central.get_mpz_t(), central.get_mpz_t(), 1);
      } else {
        // C(2m+1, m) = C(2m, m) * (2m+1) / (m+1)
        const std::uint64_t m = k / 2;
        mpz_mul_ui(central.get_mpz_t(), central.get_mpz_t(), 2 * m + 1);
        mpz_divexact_ui(central.get_mpz_t(), central.get_mpz_t(), m + 1);
      }
    }
    mpz_addmul(total.get_mpz_t(), choose_participants.get_mpz_t(), central.get_mpz_t());
  }
  return BigCount(std::move(total));
}

PowerResult ternary_power_exact(std::uint64_t n_others, const PowerConfig& config) {
  check_cap(n_others, config);
  if (n_others == 0) {
    return make_exact(0, VotingScheme::Ternary, Rational(BigCount{1}, BigCount{1}));
  }
  return make_exact(n_others, VotingScheme::Ternary,
                    Rational(ternary_sum_via_trinomials(n_others), pow_u64(3, n_others)));
}

PowerResult binary_power_asymptotic(std::uint64_t n_others) {
  require_positive(n_others);
  const double n = static_cast<double>(n_others);
  const double value = asymptotic_constant(VotingScheme::Binary) / std::sqrt(n + 1.0);
  return {n_others, VotingScheme::Binary, Probability::real(value), Method::Asymptotic,
          kBinaryErrorConstant / n};
}

PowerResult ternary_power_asymptotic(std::uint64_t n_others, AsymptoticForm form) {
  require_positive(n_others);
  const double n = static_cast<double>(n_others);
  const double c = asymptotic_constant(VotingScheme::Ternary);
  double value = 0.0;
  double hint = 0.0;
  if (form == AsymptoticForm::TwoTerm) {
    value = 0.5 * c * (1.0 / std::sqrt(n) + 1.0 / std::sqrt(n + 1.0));
    hint = kTernaryTwoTermErrorConstant / n;
  } else {
    value = c / std::sqrt(n + 1.0);
    hint = kTernaryErrorConstant / n;
  }
  return {n_others, VotingScheme::Ternary, Probability::real(value), Method::Asymptotic, hint};
}

PowerResult binary_power_float(std::uint64_t n_others) {
  const double value = std::exp(log_binomial_half_pmf(n_others, n_others / 2).log_value);
  return {n_others, VotingScheme::Binary, Probability::real(value), Method::ExactFloat, std::nullopt};
}

std::vector<double> ternary_power_float_sweep(std::span<const std::uint64_t> n_others) {
  std::vector<double> out(n_others.size());
  if (n_others.empty()) return out;

  std::vector<std::size_t> order(n_others.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return n_others[a] < n_others[b]; });

  // scaled[m] = T(m) / 3^m; P_N = (scaled(N) + 3 scaled(N + 1)) / 2.
  double prev = 1.0;        // scaled(m - 1)
  double cur = 1.0 / 3.0;   // scaled(m)
  std::uint64_t m = 1;
  auto it = order.begin();
  auto emit_while_ready = [&](double at_n, double at_next, std::uint64_t n) {
    while (it != order.end() && n_others[*it] == n) {
      out[*it] = 0.5 * (at_n + 3.0 * at_next);
      ++it;
    }
  };
  emit_while_ready(prev, cur, 0);
  while (it != order.end()) {
    const double md = static_cast<double>(m + 1);
    const double next = ((2.0 * md - 1.0) * cur + (md - 1.0) * prev) / (3.0 * md);
    prev = cur;
    cur = next;
    ++m;
    emit_while_ready(prev, cur, m - 1);
  }
  return out;
}

PowerResult ternary_power_float(std::uint64_t n_others) {
  const std::uint64_t n[] = {n_others};
  const double value = ternary_power_float_sweep(n).front();
  return {n_others, VotingScheme::Ternary, Probability::real(value), Method::ExactFloat,
          std::nullopt};
}

PowerResult power(std::uint64_t n_others, VotingScheme scheme, Strategy strategy,
                  const PowerConfig& config) {
  const bool exact = strategy == Strategy::ForceExact ||
                     (strategy == Strategy::Auto && n_others <= config.exact_threshold);
  if (exact) {
    return scheme == VotingScheme::Binary ? binary_power_exact(n_others, config)
                                          : ternary_power_exact(n_others, config);
  }
  return scheme == VotingScheme::Binary ? binary_power_asymptotic(n_others)
                                        : ternary_power_asymptotic(n_others, config.ternary_form);
}

}  // namespace pivotal
