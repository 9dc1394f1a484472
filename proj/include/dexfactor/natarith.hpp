#pragma once

// Arbitrary-precision integers shared by every other module.
//
// Natural is a non-negative integer, SignedInt carries a sign. Both are thin
// value types over GMP's mpz_class; all arithmetic is exact.

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dexfactor {

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t),
              "mpz_class interop assumes 64-bit unsigned long");

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v) : v_(static_cast<unsigned long>(v)) {}  // NOLINT(implicit)

  // Throws std::domain_error if v is negative.
  static Natural from_mpz(mpz_class v);

  // Plain decimal digits only: no sign, no whitespace, no leading '+'.
  static Natural parse(std::string_view text);
  static std::optional<Natural> try_parse(std::string_view text);

  std::string to_string() const { return v_.get_str(10); }
  const mpz_class& mpz() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_odd() const { return mpz_odd_p(v_.get_mpz_t()) != 0; }
  bool is_even() const { return !is_odd(); }
  std::size_t bit_length() const {
    return is_zero() ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
  }
  std::optional<std::uint64_t> to_u64() const;

  Natural& operator+=(const Natural& o) { v_ += o.v_; return *this; }
  Natural& operator*=(const Natural& o) { v_ *= o.v_; return *this; }
  // Throws std::domain_error on underflow.
  Natural& operator-=(const Natural& o);

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
  friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
  // Truncating division; throws std::domain_error on a zero divisor.
  friend Natural operator/(const Natural& a, const Natural& b);
  friend Natural operator%(const Natural& a, const Natural& b);

  friend bool operator==(const Natural& a, const Natural& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Natural& n) {
    return os << n.to_string();
  }

 private:
  mpz_class v_;
};

class SignedInt {
 public:
  SignedInt() = default;
  SignedInt(std::int64_t v) : v_(static_cast<long>(v)) {}  // NOLINT(implicit)
  SignedInt(const Natural& n) : v_(n.mpz()) {}               // NOLINT(implicit)
  explicit SignedInt(mpz_class v) : v_(std::move(v)) {}

  // Optional leading '-', then decimal digits.
  static SignedInt parse(std::string_view text);

  std::string to_string() const { return v_.get_str(10); }
  const mpz_class& mpz() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_negative() const { return sign() < 0; }
  Natural abs() const;
  // Throws std::domain_error if negative.
  Natural to_natural() const { return Natural::from_mpz(v_); }
  std::optional<std::int64_t> to_i64() const;

  SignedInt& operator+=(const SignedInt& o) { v_ += o.v_; return *this; }
  SignedInt& operator-=(const SignedInt& o) { v_ -= o.v_; return *this; }
  SignedInt& operator*=(const SignedInt& o) { v_ *= o.v_; return *this; }

  friend SignedInt operator+(SignedInt a, const SignedInt& b) { return a += b; }
  friend SignedInt operator-(SignedInt a, const SignedInt& b) { return a -= b; }
  friend SignedInt operator*(SignedInt a, const SignedInt& b) { return a *= b; }
  friend SignedInt operator-(const SignedInt& a) { return SignedInt(mpz_class(-a.v_)); }

  friend bool operator==(const SignedInt& a, const SignedInt& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const SignedInt& a, const SignedInt& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const SignedInt& n) {
    return os << n.to_string();
  }

 private:
  mpz_class v_;
};

// Largest r with r*r <= n.
Natural isqrt(const Natural& n);

bool is_perfect_square(const Natural& n);

// Largest odd m <= isqrt(n). Requires n odd and n >= 9; throws
// std::invalid_argument otherwise.
Natural start_point(const Natural& n);

// start_point(n)^2 - n; never positive.
SignedInt delta0(const Natural& n);

}  // namespace dexfactor
