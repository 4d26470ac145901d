#include "pivotal/big_count.hpp"

#include <cmath>
#include <utility>

#include "pivotal/errors.hpp"

namespace pivotal {

namespace {

mpz_class from_u64(std::uint64_t v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return out;
}

double mpz_log(const mpz_class& v) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

}  // namespace

BigCount::BigCount(std::uint64_t v) : value_(from_u64(v)) {}

BigCount::BigCount(mpz_class v) : value_(std::move(v)) {
  if (sgn(value_) < 0) throw ContractViolation("BigCount must be nonnegative");
}

BigCount BigCount::from_string(const std::string& digits) {
  mpz_class v;
  if (digits.empty() || v.set_str(digits, 10) != 0) {
    throw ContractViolation("not a decimal integer: '" + digits + "'");
  }
  return BigCount(std::move(v));
}

BigCount& BigCount::operator+=(const BigCount& rhs) {
  value_ += rhs.value_;
  return *this;
}

BigCount& BigCount::operator-=(const BigCount& rhs) {
  if (cmp(value_, rhs.value_) < 0) throw ContractViolation("BigCount subtraction underflow");
  value_ -= rhs.value_;
  return *this;
}

BigCount& BigCount::operator*=(const BigCount& rhs) {
  value_ *= rhs.value_;
  return *this;
}

std::size_t BigCount::decimal_digits() const {
  return is_zero() ? 1 : value_.get_str().size();
}

double BigCount::log() const {
  if (sgn(value_) <= 0) throw ContractViolation("log of a non-positive count");
  return mpz_log(value_);
}

Rational::Rational(const BigCount& num, const BigCount& den) {
  if (den.is_zero()) throw ContractViolation("zero denominator");
  value_ = mpq_class(num.mpz(), den.mpz());
  value_.canonicalize();
}

Rational::Rational(mpq_class q) : value_(std::move(q)) {
  value_.canonicalize();
  if (sgn(value_) < 0) throw ContractViolation("Rational must be nonnegative");
}

BigCount Rational::numerator() const { return BigCount(mpz_class(value_.get_num())); }
BigCount Rational::denominator() const { return BigCount(mpz_class(value_.get_den())); }

double Rational::to_double() const {
  // mpq_get_d truncates; ratio of logs keeps precision for huge operands.
  const mpz_class& num = value_.get_num();
  const mpz_class& den = value_.get_den();
  if (sgn(num) == 0) return 0.0;
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

BigCount pow_u64(std::uint64_t base, std::uint64_t exponent) {
  mpz_class out;
  mpz_class b = from_u64(base);
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exponent);
  return BigCount(std::move(out));
}

}  // namespace pivotal
