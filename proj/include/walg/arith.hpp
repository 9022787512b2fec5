#ifndef WALG_ARITH_HPP
#define WALG_ARITH_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace walg {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(static_cast<long>(v)) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(const mpz_class& v) : v_(v) {}
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Parses "p", "-p", "p/q" (whitespace not allowed). Throws ParseError.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const noexcept { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const noexcept { return sgn(v_) == 0; }
  bool is_integer() const noexcept { return v_.get_den() == 1; }
  int sign() const noexcept { return sgn(v_); }

  /// Checked conversion; throws DomainError if not an integer in range.
  std::int64_t to_int64() const;

  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline bool is_zero(const Rational& r) { return r.is_zero(); }
Rational abs(const Rational& r);
/// (-1)^n for integer n.
Rational sign_power(std::int64_t n);

/// An exact element of (1/2)Z, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int v) : doubled_(2 * static_cast<std::int64_t>(v)) {}  // NOLINT
  static constexpr HalfInt from_doubled(std::int64_t d) {
    HalfInt h;
    h.doubled_ = d;
    return h;
  }
  /// Throws DomainError unless 2*r is an integer.
  static HalfInt from_rational(const Rational& r);
  /// Parses "n", "-n", "n/2". Throws ParseError.
  static HalfInt parse(std::string_view text);

  constexpr std::int64_t doubled() const noexcept { return doubled_; }
  constexpr bool is_integer() const noexcept { return doubled_ % 2 == 0; }
  /// Throws DomainError for odd doubled values.
  std::int64_t to_int() const;
  Rational to_rational() const { return Rational(doubled_, 2); }
  std::string to_string() const;

  HalfInt operator-() const;
  HalfInt& operator+=(const HalfInt& o);
  HalfInt& operator-=(const HalfInt& o);
  friend HalfInt operator+(HalfInt a, const HalfInt& b) { return a += b; }
  friend HalfInt operator-(HalfInt a, const HalfInt& b) { return a -= b; }

  friend constexpr bool operator==(const HalfInt&, const HalfInt&) = default;
  friend constexpr auto operator<=>(const HalfInt&, const HalfInt&) = default;

 private:
  std::int64_t doubled_ = 0;
};

HalfInt abs(const HalfInt& h);
std::ostream& operator<<(std::ostream& os, const HalfInt& h);

/// a(a+1)...(a+n-1) for any ring with an embedding of the integers.
template <class Ring>
Ring rising_product(const Ring& a, std::int64_t n) {
  Ring out{Rational(1)};
  for (std::int64_t i = 0; i < n; ++i) out = out * (a + Ring{Rational(i)});
  return out;
}

/// a(a-1)...(a-n+1).
template <class Ring>
Ring falling_product(const Ring& a, std::int64_t n) {
  Ring out{Rational(1)};
  for (std::int64_t i = 0; i < n; ++i) out = out * (a - Ring{Rational(i)});
  return out;
}

/// Ascending Pochhammer symbol (a)_n. Throws DomainError for n < 0.
Rational pochhammer_rising(const Rational& a, std::int64_t n);
/// Descending Pochhammer symbol [a]_n. Throws DomainError for n < 0.
Rational pochhammer_falling(const Rational& a, std::int64_t n);
/// Generalized binomial [a]_k / k!, zero for k < 0.
Rational binomial(const Rational& a, std::int64_t k);
/// n! for n >= 0. Throws DomainError otherwise.
Rational factorial(std::int64_t n);

}  // namespace walg

#endif  // WALG_ARITH_HPP
