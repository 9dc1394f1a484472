#include "dexfactor/natarith.hpp"

#include <algorithm>
#include <limits>

namespace dexfactor {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Natural Natural::from_mpz(mpz_class v) {
  if (sgn(v) < 0) throw std::domain_error("negative value is not a Natural");
  Natural n;
  n.v_ = std::move(v);
  return n;
}

std::optional<Natural> Natural::try_parse(std::string_view text) {
  if (!all_digits(text)) return std::nullopt;
  Natural n;
  n.v_.set_str(std::string(text), 10);
  return n;
}

Natural Natural::parse(std::string_view text) {
  auto n = try_parse(text);
  if (!n) throw ParseError("not a non-negative decimal integer: '" + std::string(text) + "'");
  return *std::move(n);
}

std::optional<std::uint64_t> Natural::to_u64() const {
  if (!v_.fits_ulong_p()) return std::nullopt;
  return static_cast<std::uint64_t>(v_.get_ui());
}

Natural& Natural::operator-=(const Natural& o) {
  if (cmp(v_, o.v_) < 0) throw std::domain_error("Natural subtraction underflow");
  v_ -= o.v_;
  return *this;
}

Natural operator/(const Natural& a, const Natural& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  Natural r;
  mpz_tdiv_q(r.v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return r;
}

Natural operator%(const Natural& a, const Natural& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  Natural r;
  mpz_tdiv_r(r.v_.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
  return r;
}

SignedInt SignedInt::parse(std::string_view text) {
  bool neg = !text.empty() && text.front() == '-';
  auto digits = neg ? text.substr(1) : text;
  if (!all_digits(digits)) throw ParseError("not a decimal integer: '" + std::string(text) + "'");
  mpz_class v(std::string(digits), 10);
  if (neg) v = -v;
  return SignedInt(std::move(v));
}

Natural SignedInt::abs() const { return Natural::from_mpz(mpz_class(::abs(v_))); }

std::optional<std::int64_t> SignedInt::to_i64() const {
  if (!v_.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(v_.get_si());
}

Natural isqrt(const Natural& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.mpz().get_mpz_t());
  return Natural::from_mpz(std::move(r));
}

bool is_perfect_square(const Natural& n) {
  return mpz_perfect_square_p(n.mpz().get_mpz_t()) != 0;
}

Natural start_point(const Natural& n) {
  if (n.is_even() || n < Natural(9))
    throw std::invalid_argument("start_point requires odd n >= 9, got " + n.to_string());
  Natural r = isqrt(n);
  if (r.is_even()) r -= Natural(1);
  return r;
}

SignedInt delta0(const Natural& n) {
  Natural m = start_point(n);
  return SignedInt(m * m) - SignedInt(n);
}

}  // namespace dexfactor
