#include "walg/arith.hpp"

#include <cctype>
#include <limits>
#include <ostream>

#include "walg/error.hpp"

namespace walg {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::int64_t checked(std::int64_t a, std::int64_t b, bool add) {
  std::int64_t out = 0;
  const bool overflow = add ? __builtin_add_overflow(a, b, &out)
                            : __builtin_sub_overflow(a, b, &out);
  if (overflow) throw DomainError("half-integer overflow");
  return out;
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!valid_integer_text(num)) {
    throw ParseError("invalid rational '" + std::string(text) + "'", 1, 1);
  }
  std::string num_s(num);
  if (num_s[0] == '+') num_s.erase(0, 1);
  mpz_class n(num_s, 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!valid_integer_text(den) || den[0] == '-' || den[0] == '+') {
      throw ParseError("invalid rational '" + std::string(text) + "'", 1,
                       static_cast<int>(slash) + 2);
    }
    d = mpz_class(std::string(den), 10);
    if (d == 0) {
      throw ParseError("zero denominator in '" + std::string(text) + "'", 1,
                       static_cast<int>(slash) + 2);
    }
  }
  mpq_class q(n, d);
  return Rational(q);
}

std::int64_t Rational::to_int64() const {
  if (!is_integer()) {
    throw DomainError("expected an integer, got " + to_string());
  }
  const mpz_class& n = v_.get_num();
  if (!n.fits_slong_p()) throw DomainError("integer out of range: " + to_string());
  return n.get_si();
}

std::string Rational::to_string() const { return v_.get_str(10); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational sign_power(std::int64_t n) { return (n % 2 == 0) ? 1 : -1; }

HalfInt HalfInt::from_rational(const Rational& r) {
  const Rational twice = r * Rational(2);
  if (!twice.is_integer()) {
    throw DomainError("not a half-integer: " + r.to_string());
  }
  return from_doubled(twice.to_int64());
}

HalfInt HalfInt::parse(std::string_view text) {
  Rational r = Rational::parse(text);
  const Rational twice = r * Rational(2);
  if (!twice.is_integer()) {
    throw ParseError("not a half-integer '" + std::string(text) + "'", 1, 1);
  }
  return from_doubled(twice.to_int64());
}

std::int64_t HalfInt::to_int() const {
  if (!is_integer()) throw DomainError("expected an integer, got " + to_string());
  return doubled_ / 2;
}

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(doubled_ / 2);
  return std::to_string(doubled_) + "/2";
}

HalfInt HalfInt::operator-() const {
  if (doubled_ == std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("half-integer overflow");
  }
  return from_doubled(-doubled_);
}

HalfInt& HalfInt::operator+=(const HalfInt& o) {
  doubled_ = checked(doubled_, o.doubled_, true);
  return *this;
}

HalfInt& HalfInt::operator-=(const HalfInt& o) {
  doubled_ = checked(doubled_, o.doubled_, false);
  return *this;
}

HalfInt abs(const HalfInt& h) { return h.doubled() < 0 ? -h : h; }

std::ostream& operator<<(std::ostream& os, const HalfInt& h) {
  return os << h.to_string();
}

Rational pochhammer_rising(const Rational& a, std::int64_t n) {
  if (n < 0) throw DomainError("Pochhammer length must be non-negative");
  return rising_product(a, n);
}

Rational pochhammer_falling(const Rational& a, std::int64_t n) {
  if (n < 0) throw DomainError("Pochhammer length must be non-negative");
  return falling_product(a, n);
}

Rational binomial(const Rational& a, std::int64_t k) {
  if (k < 0) return 0;
  return falling_product(a, k) / factorial(k);
}

Rational factorial(std::int64_t n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(out);
}

}  // namespace walg
