#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "pivotal/big_count.hpp"

namespace pivotal {

// Binary: each other voter says yes or no. Ternary: yes, no or abstain.
enum class VotingScheme { Binary, Ternary };

std::uint64_t outcome_base(VotingScheme scheme);
std::string_view to_string(VotingScheme scheme);
std::optional<VotingScheme> parse_scheme(std::string_view text);

enum class Method { ExactRational, ExactFloat, Asymptotic };
std::string_view to_string(Method method);

enum class Strategy { Auto, ForceExact, ForceAsymptotic };
std::optional<Strategy> parse_strategy(std::string_view text);

// OneTerm: c / sqrt(N + 1). TwoTerm (ternary only): c/2 (1/sqrt(N) + 1/sqrt(N + 1)).
enum class AsymptoticForm { OneTerm, TwoTerm };

/// A probability that remembers whether it is exact.
class Probability {
 public:
  static Probability exact(Rational value) { return Probability(std::move(value)); }
  static Probability real(double value) { return Probability(value); }

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;  // throws ContractViolation unless is_exact()
  double to_double() const;

 private:
  explicit Probability(Rational value) : value_(std::move(value)) {}
  explicit Probability(double value) : value_(value) {}

  std::variant<Rational, double> value_;
};

struct PowerResult {
  std::uint64_t n_others = 0;  // voters other than the focal one
  VotingScheme scheme = VotingScheme::Binary;
  Probability value = Probability::real(1.0);
  Method method = Method::ExactRational;
  std::optional<double> error_hint;  // claimed relative-error bound

  double to_double() const { return value.to_double(); }
};

struct PowerConfig {
  // Auto runs the exact path up to this N and the asymptotic law above it.
  std::uint64_t exact_threshold = 5000;
  // Exact rational evaluation is refused above this N.
  std::uint64_t exact_cap = 1'000'000;
  AsymptoticForm ternary_form = AsymptoticForm::OneTerm;
};

/// sqrt(2/pi) for Binary, sqrt(3/pi) for Ternary.
double asymptotic_constant(VotingScheme scheme);

// Empirical N * |exact/asymptotic - 1| at N = 4096 (0.24995, 0.06248 and
// 0.31244), rounded up to three figures. The asymptotic results report
// error_hint = constant / N. Measured, not derived: only the O(1/N) order
// is known analytically.
inline constexpr double kBinaryErrorConstant = 0.250;
inline constexpr double kTernaryErrorConstant = 0.0625;
inline constexpr double kTernaryTwoTermErrorConstant = 0.313;

/// C(N, floor(N/2)) / 2^N.
PowerResult binary_power_exact(std::uint64_t n_others, const PowerConfig& config = {});

/// 3^-N * sum_K C(N, K) C(K, floor(K/2)), evaluated through the trinomial identity.
PowerResult ternary_power_exact(std::uint64_t n_others, const PowerConfig& config = {});

/// (N 0)_2 + (N 1)_2; requires N >= 1.
BigCount ternary_sum_via_trinomials(std::uint64_t n_others);

/// sum_K C(N, K) C(K, floor(K/2)) term by term. Independent of the trinomial route.
BigCount ternary_sum_direct(std::uint64_t n_others);

PowerResult binary_power_asymptotic(std::uint64_t n_others);
PowerResult ternary_power_asymptotic(std::uint64_t n_others,
                                     AsymptoticForm form = AsymptoticForm::OneTerm);

/// Exact formulas evaluated in double precision for N far beyond the
/// rational cap. Binary goes through log_binomial_half_pmf; ternary runs the
/// central-trinomial recurrence scaled by 3^-m, which is forward-stable
/// (the parasitic solution decays like (-1/3)^m).
PowerResult binary_power_float(std::uint64_t n_others);
PowerResult ternary_power_float(std::uint64_t n_others);

/// ternary_power_float for many N in one recurrence pass; output order
/// follows the input.
std::vector<double> ternary_power_float_sweep(std::span<const std::uint64_t> n_others);

/// Dispatch by strategy. Auto: exact for N <= exact_threshold, asymptotic above.
PowerResult power(std::uint64_t n_others, VotingScheme scheme, Strategy strategy = Strategy::Auto,
                  const PowerConfig& config = {});

}  // namespace pivotal
