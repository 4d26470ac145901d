#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace pivotal {

/// Arbitrary-precision nonnegative integer used for binomial and trinomial
/// coefficient values. Subtraction that would go negative is a contract error.
class BigCount {
 public:
  BigCount() = default;
  BigCount(std::uint64_t v);  // NOLINT(google-explicit-constructor)
  explicit BigCount(mpz_class v);

  static BigCount from_string(const std::string& digits);

  const mpz_class& mpz() const { return value_; }

  BigCount& operator+=(const BigCount& rhs);
  BigCount& operator-=(const BigCount& rhs);
  BigCount& operator*=(const BigCount& rhs);

  friend BigCount operator+(BigCount lhs, const BigCount& rhs) { return lhs += rhs; }
  friend BigCount operator-(BigCount lhs, const BigCount& rhs) { return lhs -= rhs; }
  friend BigCount operator*(BigCount lhs, const BigCount& rhs) { return lhs *= rhs; }

  friend bool operator==(const BigCount& a, const BigCount& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const BigCount& a, const BigCount& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

  bool is_zero() const { return sgn(value_) == 0; }
  std::size_t decimal_digits() const;
  std::string to_string() const { return value_.get_str(); }

  // Natural logarithm; well-defined for values far beyond double range.
  // Requires a positive value.
  double log() const;

 private:
  mpz_class value_;
};

/// Exact nonnegative rational in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(const BigCount& num, const BigCount& den);
  explicit Rational(mpq_class q);

  BigCount numerator() const;
  BigCount denominator() const;
  const mpq_class& mpq() const { return value_; }

  double to_double() const;
  std::string to_string() const { return value_.get_str(); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  mpq_class value_;
};

BigCount pow_u64(std::uint64_t base, std::uint64_t exponent);

}  // namespace pivotal
