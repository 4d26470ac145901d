#include "pivotal/power.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "pivotal/errors.hpp"

namespace pivotal {
namespace {

Rational Q(std::uint64_t num, std::uint64_t den) { return Rational(BigCount{num}, BigCount{den}); }

TEST(BinaryPowerExact, Examples) {
  EXPECT_EQ(binary_power_exact(0).value.rational(), Q(1, 1));
  EXPECT_EQ(binary_power_exact(2).value.rational(), Q(1, 2));
  EXPECT_EQ(binary_power_exact(3).value.rational(), Q(3, 8));
  EXPECT_EQ(binary_power_exact(3).method, Method::ExactRational);
  EXPECT_FALSE(binary_power_exact(3).error_hint.has_value());
}

TEST(TernaryPowerExact, Examples) {
  EXPECT_EQ(ternary_power_exact(0).value.rational(), Q(1, 1));
  EXPECT_EQ(ternary_power_exact(1).value.rational(), Q(2, 3));
  EXPECT_EQ(ternary_power_exact(2).value.rational(), Q(5, 9));
  EXPECT_EQ(ternary_power_exact(3).value.rational(), Q(13, 27));
}

TEST(PowerExact, RefusesAboveCap) {
  PowerConfig config;
  config.exact_cap = 100;
  EXPECT_NO_THROW(binary_power_exact(100, config));
  EXPECT_THROW(binary_power_exact(101, config), ResourceRefused);
  EXPECT_THROW(ternary_power_exact(101, config), ResourceRefused);
  EXPECT_THROW(power(101, VotingScheme::Ternary, Strategy::ForceExact, config), ResourceRefused);
  EXPECT_THROW(binary_power_exact(1'000'001), ResourceRefused);
}

TEST(TernarySum, Examples) {
  EXPECT_EQ(ternary_sum_via_trinomials(1), BigCount{2});
  EXPECT_EQ(ternary_sum_via_trinomials(2), BigCount{5});
  EXPECT_EQ(ternary_sum_via_trinomials(3), BigCount{13});
  EXPECT_EQ(ternary_sum_direct(0), BigCount{1});
  EXPECT_EQ(ternary_sum_direct(1), BigCount{2});
  EXPECT_EQ(ternary_sum_direct(2), BigCount{5});
  EXPECT_EQ(ternary_sum_direct(3), BigCount{13});
  EXPECT_THROW(ternary_sum_via_trinomials(0), ContractViolation);
}

TEST(TernarySum, DirectSumMatchesNaiveBinomials) {
  // Independent check on the multiplicative updates inside ternary_sum_direct.
  for (unsigned n = 0; n <= 60; ++n) {
    mpz_class sum = 0;
    for (unsigned k = 0; k <= n; ++k) {
      mpz_class a;
      mpz_class b;
      mpz_bin_uiui(a.get_mpz_t(), n, k);
      mpz_bin_uiui(b.get_mpz_t(), k, k / 2);
      sum += a * b;
    }
    ASSERT_EQ(ternary_sum_direct(n).mpz(), sum) << n;
  }
}

TEST(TernarySum, TrinomialIdentityHoldsUpTo500) {
  for (std::uint64_t n = 1; n <= 500; ++n) {
    ASSERT_EQ(ternary_sum_via_trinomials(n), ternary_sum_direct(n)) << n;
  }
}

TEST(BinaryPowerAsymptotic, Examples) {
  const auto a = binary_power_asymptotic(999'999);
  EXPECT_NEAR(a.to_double(), 7.97885e-4, 1e-9);
  EXPECT_EQ(a.method, Method::Asymptotic);
  ASSERT_TRUE(a.error_hint.has_value());
  EXPECT_DOUBLE_EQ(*a.error_hint, kBinaryErrorConstant / 999'999.0);
  EXPECT_NEAR(binary_power_asymptotic(3'999'999).to_double(), a.to_double() / 2.0, 1e-18);

  const double exact = binary_power_exact(10'000).to_double();
  EXPECT_LE(std::abs(exact / binary_power_asymptotic(10'000).to_double() - 1.0), 1e-3);
  EXPECT_THROW(binary_power_asymptotic(0), ContractViolation);
}

TEST(TernaryPowerAsymptotic, Examples) {
  EXPECT_NEAR(ternary_power_asymptotic(999'999).to_double(), 9.77205e-4, 1e-9);
  const double exact = ternary_power_exact(10'000).to_double();
  EXPECT_LE(std::abs(exact / ternary_power_asymptotic(10'000).to_double() - 1.0), 1e-3);
  for (const std::uint64_t n : {10u, 1000u, 10'000'000u}) {
    EXPECT_NEAR(ternary_power_asymptotic(n).to_double() / binary_power_asymptotic(n).to_double(),
                std::sqrt(1.5), 1e-12);
  }
  EXPECT_THROW(ternary_power_asymptotic(0), ContractViolation);
}

TEST(TernaryPowerAsymptotic, TwoTermForm) {
  const std::uint64_t n = 100;
  const double c = std::sqrt(3.0 / std::numbers::pi);
  const auto two = ternary_power_asymptotic(n, AsymptoticForm::TwoTerm);
  EXPECT_NEAR(two.to_double(), 0.5 * c * (1.0 / std::sqrt(100.0) + 1.0 / std::sqrt(101.0)), 1e-15);
  EXPECT_DOUBLE_EQ(*two.error_hint, kTernaryTwoTermErrorConstant / 100.0);
  // Both forms stay within their claimed bounds of the exact value.
  const double exact = ternary_power_exact(n).to_double();
  for (const auto form : {AsymptoticForm::OneTerm, AsymptoticForm::TwoTerm}) {
    const auto a = ternary_power_asymptotic(n, form);
    EXPECT_LE(std::abs(exact / a.to_double() - 1.0), *a.error_hint);
  }
}

TEST(AsymptoticConstants, SixSignificantDigits) {
  EXPECT_NEAR(asymptotic_constant(VotingScheme::Binary), 0.797885, 5e-7);
  EXPECT_NEAR(asymptotic_constant(VotingScheme::Ternary), 0.977205, 5e-7);
}

TEST(Power, Dispatch) {
  const auto small = power(2, VotingScheme::Binary);
  EXPECT_EQ(small.method, Method::ExactRational);
  EXPECT_EQ(small.value.rational(), Q(1, 2));

  const auto big = power(10'000'000, VotingScheme::Ternary);
  EXPECT_EQ(big.method, Method::Asymptotic);
  EXPECT_NEAR(big.to_double(), std::sqrt(3.0 / std::numbers::pi) / std::sqrt(10'000'001.0), 1e-18);
  EXPECT_NEAR(big.to_double(), 3.0901e-4, 1e-8);

  EXPECT_EQ(power(5, VotingScheme::Ternary, Strategy::ForceExact).value.rational(),
            power(5, VotingScheme::Ternary, Strategy::Auto).value.rational());

  PowerConfig config;
  config.exact_threshold = 10;
  EXPECT_EQ(power(10, VotingScheme::Ternary, Strategy::Auto, config).method, Method::ExactRational);
  EXPECT_EQ(power(11, VotingScheme::Ternary, Strategy::Auto, config).method, Method::Asymptotic);
  EXPECT_EQ(power(5000, VotingScheme::Binary).method, Method::ExactRational);
  EXPECT_EQ(power(5001, VotingScheme::Binary).method, Method::Asymptotic);
  EXPECT_EQ(power(3, VotingScheme::Binary, Strategy::ForceAsymptotic).method, Method::Asymptotic);
  EXPECT_THROW(power(0, VotingScheme::Binary, Strategy::ForceAsymptotic), ContractViolation);

  config.ternary_form = AsymptoticForm::TwoTerm;
  EXPECT_EQ(power(50, VotingScheme::Ternary, Strategy::ForceAsymptotic, config).to_double(),
            ternary_power_asymptotic(50, AsymptoticForm::TwoTerm).to_double());
}

TEST(Power, ValueInUnitInterval) {
  for (const auto scheme : {VotingScheme::Binary, VotingScheme::Ternary}) {
    for (const std::uint64_t n : {0u, 1u, 2u, 17u, 5000u, 5001u, 1'000'000'000u}) {
      const double v = power(n, scheme).to_double();
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Power, MonotoneDecay) {
  Rational prev_binary = binary_power_exact(0).value.rational();
  Rational prev_ternary = ternary_power_exact(0).value.rational();
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    const Rational b = binary_power_exact(n).value.rational();
    const Rational t = ternary_power_exact(n).value.rational();
    ASSERT_LE(b, prev_binary) << n;
    ASSERT_LT(t, prev_ternary) << n;
    prev_binary = b;
    prev_ternary = t;
  }
}

TEST(Power, AsymptoticConvergence) {
  for (const auto scheme : {VotingScheme::Binary, VotingScheme::Ternary}) {
    double prev_err = INFINITY;
    for (const std::uint64_t n : {64u, 256u, 1024u, 4096u}) {
      const double exact = power(n, scheme, Strategy::ForceExact).to_double();
      const auto approx = power(n, scheme, Strategy::ForceAsymptotic);
      const double err = std::abs(exact / approx.to_double() - 1.0);
      EXPECT_LT(err, prev_err) << to_string(scheme) << " N=" << n;
      EXPECT_LT(err * static_cast<double>(n), 0.3) << to_string(scheme) << " N=" << n;
      EXPECT_LE(err, *approx.error_hint) << to_string(scheme) << " N=" << n;
      prev_err = err;
    }
  }
}

TEST(Power, SquareRootSlope) {
  // Least squares of ln P against ln(N+1), exact ternary path, N+1 in [1e3, 1e5].
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = 0; i <= 8; ++i) {
    const auto voters = static_cast<std::uint64_t>(std::llround(std::pow(10.0, 3.0 + 0.25 * i)));
    xs.push_back(std::log(static_cast<double>(voters)));
    ys.push_back(std::log(ternary_power_exact(voters - 1).to_double()));
  }
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  EXPECT_NEAR(sxy / sxx, -0.5, 0.005);
}

TEST(PowerFloat, AgreesWithExactRationals) {
  for (const std::uint64_t n : {0u, 1u, 2u, 3u, 10u, 99u, 1000u, 4999u}) {
    const double tb = binary_power_exact(n).to_double();
    const double tt = ternary_power_exact(n).to_double();
    EXPECT_NEAR(binary_power_float(n).to_double() / tb, 1.0, 1e-12) << n;
    EXPECT_NEAR(ternary_power_float(n).to_double() / tt, 1.0, 1e-12) << n;
  }
  EXPECT_EQ(ternary_power_float(7).method, Method::ExactFloat);
}

TEST(PowerFloat, SweepPreservesInputOrder) {
  const std::vector<std::uint64_t> ns = {500, 3, 500, 0, 42};
  const auto values = ternary_power_float_sweep(ns);
  ASSERT_EQ(values.size(), ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    EXPECT_EQ(values[i], ternary_power_float(ns[i]).to_double()) << i;
  }
  EXPECT_TRUE(ternary_power_float_sweep(std::vector<std::uint64_t>{}).empty());
}

TEST(PowerFloat, LargeNApproachesSquareRootLaw) {
  const std::uint64_t n = 20'000'000;
  const double t = ternary_power_float(n).to_double();
  const double b = binary_power_float(n).to_double();
  // Leading corrections: -1/(16N) ternary, +1/(4N) binary.
  EXPECT_NEAR(t / ternary_power_asymptotic(n).to_double() - 1.0, -1.0 / (16.0 * n), 1e-9);
  EXPECT_NEAR(b / binary_power_asymptotic(n).to_double() - 1.0, 1.0 / (4.0 * n), 1e-9);
}

TEST(Scheme, NamesAndBases) {
  EXPECT_EQ(outcome_base(VotingScheme::Binary), 2u);
  EXPECT_EQ(outcome_base(VotingScheme::Ternary), 3u);
  EXPECT_EQ(parse_scheme("ternary"), VotingScheme::Ternary);
  EXPECT_FALSE(parse_scheme("Ternary").has_value());
  EXPECT_EQ(parse_strategy("exact"), Strategy::ForceExact);
  EXPECT_FALSE(parse_strategy("fast").has_value());
  EXPECT_EQ(to_string(Method::ExactFloat), "exact-float");
}

}  // namespace
}  // namespace pivotal
