#ifndef WALG_POLYNOMIAL_HPP
#define WALG_POLYNOMIAL_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "walg/arith.hpp"

namespace walg {

/// Power product of named variables; absent variables have exponent 0.
/// Never stores a zero exponent.
using Monomial = std::map<std::string, int>;

/// Lexicographic comparison with variables in alphabetical order
/// (a > b > ...), higher exponents first. Returns <0, 0, >0.
int compare_lex(const Monomial& a, const Monomial& b);
int total_degree(const Monomial& m);

/// Sparse multivariate polynomial with rational coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial variable(const std::string& name);
  static Polynomial monomial(const Monomial& m, const Rational& c);

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Value of a constant polynomial. Throws DomainError otherwise.
  Rational constant_value() const;
  /// Coefficient of the given monomial (zero if absent).
  Rational coeff(const Monomial& m) const;

  std::set<std::string> variables() const;
  int degree(const std::string& var) const;
  int total_degree() const;
  /// Coefficient of var^d, as a polynomial in the remaining variables.
  Polynomial coeff(const std::string& var, int d) const;

  /// Leading term in lexicographic order. Throws on the zero polynomial.
  std::pair<Monomial, Rational> leading_term() const;

  Polynomial substitute(const std::string& var, const Polynomial& value) const;
  Polynomial substitute(const std::map<std::string, Polynomial>& values) const;
  /// Full evaluation; throws DomainError when a variable has no value.
  Rational evaluate(const std::map<std::string, Rational>& values) const;
  /// Partial evaluation of the listed variables.
  Polynomial partial_evaluate(const std::map<std::string, Rational>& values) const;

  /// Homogeneous part of the given total degree in the listed variables.
  Polynomial homogeneous_part(const std::vector<std::string>& vars, int degree) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

  Polynomial pow(int e) const;

  /// Exact quotient a / b; nullopt when b does not divide a.
  static std::optional<Polynomial> divide_exact(const Polynomial& a,
                                                const Polynomial& b);

  /// Deterministic human-readable form, e.g. "2*m^2 - m*n + 1/2".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);
inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

/// Pseudo-remainder of a by b with respect to var.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b,
                            const std::string& var);
/// Greatest common divisor over Q, normalized to a positive leading
/// coefficient with integer, content-free coefficients.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Quotient of polynomials kept in lowest terms, with a denominator whose
/// leading coefficient is positive and whose coefficients are coprime
/// integers.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(const Rational& c) : num_(c) {}  // NOLINT
  RationalFunction(int c) : num_(Rational(c)) {}  // NOLINT
  RationalFunction(const Polynomial& p) : num_(p) {}  // NOLINT
  RationalFunction(const Polynomial& num, const Polynomial& den);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Throws DomainError if not a constant.
  Rational constant_value() const;

  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_{Rational(1)};
};

std::ostream& operator<<(std::ostream& os, const RationalFunction& r);
inline bool is_zero(const RationalFunction& r) { return r.is_zero(); }

}  // namespace walg

#endif  // WALG_POLYNOMIAL_HPP
