#include "walg/polynomial.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "walg/error.hpp"

namespace walg {

int compare_lex(const Monomial& a, const Monomial& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) return 1;
    if (ia == a.end() || ib->first < ia->first) return -1;
    if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
    ++ia;
    ++ib;
  }
  return 0;
}

int total_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (const auto& [v, e] : b) out[v] += e;
  return out;
}

std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (const auto& [v, e] : b) {
    auto it = out.find(v);
    if (it == out.end() || it->second < e) return std::nullopt;
    it->second -= e;
    if (it->second == 0) out.erase(it);
  }
  return out;
}

/// Scales p so that its coefficients are coprime integers and its leading
/// coefficient is positive. Returns the scale factor used.
Rational normalizing_factor(const Polynomial& p) {
  if (p.is_zero()) return 1;
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.numerator().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.denominator().get_mpz_t());
  }
  Rational f(mpq_class(den_lcm, num_gcd));
  if (p.leading_term().second.sign() < 0) f = -f;
  return f;
}

Polynomial normalized(const Polynomial& p) {
  Polynomial out = p;
  out *= normalizing_factor(p);
  return out;
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto q = Polynomial::divide_exact(a, b);
  if (!q) throw DomainError("internal: expected exact polynomial division");
  return *q;
}

Polynomial content(const Polynomial& p, const std::string& var) {
  Polynomial g;
  for (int d = p.degree(var); d >= 0; --d) {
    const Polynomial c = p.coeff(var, d);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p, const std::string& var) {
  if (p.is_zero()) return p;
  return exact_quotient(p, content(p, var));
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::variable(const std::string& name) {
  return monomial(Monomial{{name, 1}}, 1);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  Monomial clean;
  for (const auto& [v, e] : m) {
    if (e < 0) throw DomainError("negative exponent in monomial");
    if (e > 0) clean.emplace(v, e);
  }
  p.add_term(clean, c);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) out.insert(v);
  }
  return out;
}

int Polynomial::degree(const std::string& var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    if (it != m.end()) d = std::max(d, it->second);
  }
  return d;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, walg::total_degree(m));
  return d;
}

Polynomial Polynomial::coeff(const std::string& var, int d) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    const int e = it == m.end() ? 0 : it->second;
    if (e != d) continue;
    Monomial rest = m;
    rest.erase(var);
    out.add_term(rest, c);
  }
  return out;
}

std::pair<Monomial, Rational> Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  auto best = terms_.begin();
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (compare_lex(it->first, best->first) > 0) best = it;
  }
  return *best;
}

Polynomial Polynomial::substitute(const std::string& var,
                                  const Polynomial& value) const {
  return substitute(std::map<std::string, Polynomial>{{var, value}});
}

Polynomial Polynomial::substitute(
    const std::map<std::string, Polynomial>& values) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial term(c);
    Monomial kept;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) {
        kept.emplace(v, e);
      } else {
        term *= it->second.pow(e);
      }
    }
    out += term * Polynomial::monomial(kept, 1);
  }
  return out;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& values) const {
  Rational out = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) throw DomainError("no value for variable " + v);
      for (int i = 0; i < e; ++i) t *= it->second;
    }
    out += t;
  }
  return out;
}

Polynomial Polynomial::partial_evaluate(
    const std::map<std::string, Rational>& values) const {
  std::map<std::string, Polynomial> subs;
  for (const auto& [v, r] : values) subs.emplace(v, Polynomial(r));
  return substitute(subs);
}

Polynomial Polynomial::homogeneous_part(const std::vector<std::string>& vars,
                                        int degree) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (const auto& v : vars) {
      auto it = m.find(v);
      if (it != m.end()) d += it->second;
    }
    if (d == degree) out.add_term(m, c);
  }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw DomainError("negative polynomial power");
  Polynomial out(1);
  for (int i = 0; i < e; ++i) out *= *this;
  return out;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a,
                                                   const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (b.is_constant()) {
    Polynomial q = a;
    q *= Rational(1) / b.constant_value();
    return q;
  }
  const auto [lm_b, lc_b] = b.leading_term();
  Polynomial r = a;
  Polynomial q;
  while (!r.is_zero()) {
    const auto [lm_r, lc_r] = r.leading_term();
    auto m = divide(lm_r, lm_b);
    if (!m) return std::nullopt;
    const Polynomial t = Polynomial::monomial(*m, lc_r / lc_b);
    q += t;
    r -= t * b;
  }
  return q;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    const int dx = walg::total_degree(x.first);
    const int dy = walg::total_degree(y.first);
    if (dx != dy) return dx > dy;
    return compare_lex(x.first, y.first) > 0;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (m.empty() || mag != Rational(1)) {
      os << mag;
      wrote = true;
    }
    for (const auto& [v, e] : m) {
      if (wrote) os << "*";
      os << v;
      if (e != 1) os << "^" << e;
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.to_string();
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b,
                            const std::string& var) {
  const int db = b.degree(var);
  if (b.is_zero()) throw DomainError("pseudo-remainder by zero");
  const Polynomial lc = b.coeff(var, db);
  const Polynomial x = Polynomial::variable(var);
  Polynomial r = a;
  while (!r.is_zero() && r.degree(var) >= db) {
    const int dr = r.degree(var);
    const Polynomial lr = r.coeff(var, dr);
    r = lc * r - lr * x.pow(dr - db) * b;
  }
  return r;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  std::set<std::string> vars = a.variables();
  for (const auto& v : b.variables()) vars.insert(v);
  if (vars.empty()) return Polynomial(1);
  const std::string var = *vars.begin();

  const Polynomial ca = content(a, var);
  const Polynomial cb = content(b, var);
  const Polynomial c = gcd(ca, cb);
  Polynomial r0 = exact_quotient(a, ca);
  Polynomial r1 = exact_quotient(b, cb);
  if (r0.degree(var) < r1.degree(var)) std::swap(r0, r1);

  Polynomial g;
  while (true) {
    if (r1.degree(var) == 0) {
      g = Polynomial(1);
      break;
    }
    const Polynomial r = pseudo_remainder(r0, r1, var);
    if (r.is_zero()) {
      g = r1;
      break;
    }
    r0 = r1;
    r1 = primitive_part(r, var);
  }
  return normalized(c * primitive_part(g, var));
}

RationalFunction::RationalFunction(const Polynomial& num, const Polynomial& den)
    : num_(num), den_(den) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    const Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_quotient(num_, g);
      den_ = exact_quotient(den_, g);
    }
  }
  const Rational f = normalizing_factor(den_);
  num_ *= f;
  den_ *= f;
}

Rational RationalFunction::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return a + (-b);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DomainError("rational function division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::to_string() const {
  if (den_ == Polynomial(1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& r) {
  return os << r.to_string();
}

}  // namespace walg
