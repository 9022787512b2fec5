#include "walg/ope.hpp"

#include <sstream>

#include "walg/error.hpp"
#include "walg/structure.hpp"

namespace walg {

namespace {

std::vector<int> grades(const std::vector<int>& ps, std::optional<int> truncate_p) {
  std::vector<int> out;
  for (int p : ps) {
    if (!truncate_p || p <= *truncate_p) out.push_back(p);
  }
  return out;
}

/// (-1)^x C(p,x) (2q1-1-p)_x [2q2-2-x]_{p-x}
Rational template_weight(HalfInt q1, HalfInt q2, int p, int x) {
  const Rational a = Rational(2) * q1.to_rational() - Rational(1 + p);
  const Rational b = Rational(2) * q2.to_rational() - Rational(2 + x);
  return sign_power(x) * binomial(Rational(p), x) * pochhammer_rising(a, x) *
         pochhammer_falling(b, p - x);
}

template <class C>
std::string render(const BasicOpeExpansion<C>& e) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : e.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (k.hol_pole != 0) os << "*(z-w)^" << -k.hol_pole;
    if (k.antihol_pole != 0) os << "*(zb-wb)^" << -k.antihol_pole;
    os << "*";
    if (k.dbar > 0) os << "dbar^" << k.dbar << " ";
    os << to_string(k.target);
  }
  return os.str();
}

template <class C>
C from_rational(const Rational& r) {
  return C(r);
}

}  // namespace

RawOpeTemplate build_wtilde_ope(HalfInt q1, HalfInt s1, HalfInt q2, HalfInt s2,
                                const CouplingRegistry& reg,
                                std::optional<int> truncate_p) {
  RawOpeTemplate out;
  for (int p : grades(p_range(s1, s2), truncate_p)) {
    const Rational half_kappa = reg.lookup(bracket_key(s1, s2, p)) / Rational(2);
    const GeneratorLabel target =
        wtilde_label(q1 + q2 - HalfInt(1 + p), s1 + s2 - HalfInt(1 + p));
    for (int x = 0; x <= p; ++x) {
      const Rational c = half_kappa * template_weight(q1, q2, p, x);
      if (c.is_zero()) continue;
      BasicRawTerm<Rational> term;
      term.coeff = c;
      term.hol_pole = 1;
      term.pole = 1;
      term.dz = p - x;
      term.dw = x;
      term.target = target;
      term.p = p;
      term.x = x;
      out.terms.push_back(term);
    }
  }
  return out;
}

OpeExpansion build_soft_ope(HalfInt k1, HalfInt s1, HalfInt k2, HalfInt s2,
                            const CouplingRegistry& reg, int alpha_max,
                            std::optional<int> truncate_p) {
  if (alpha_max < 0) throw DomainError("alpha_max must be non-negative");
  const GeneratorLabel l1{Family::h, k1, s1};
  const GeneratorLabel l2{Family::h, k2, s2};
  const Rational h1 = soft_hbar(l1).to_rational();
  const Rational h2 = soft_hbar(l2).to_rational();
  OpeExpansion out;
  for (int p : grades(p_range(s1, s2), truncate_p)) {
    const Rational half_kappa = reg.lookup(bracket_key(s1, s2, p)) / Rational(2);
    const GeneratorLabel target{Family::h, k1 + k2 + HalfInt(p - 1),
                                s1 + s2 - HalfInt(p + 1)};
    const Rational lower = -Rational(2) * h2 - Rational(p);
    for (int alpha = 0; alpha <= alpha_max; ++alpha) {
      const Rational upper =
          -Rational(2) * h1 - Rational(2) * h2 - Rational(2 * p + alpha);
      const Rational c =
          -half_kappa * binomial(upper, lower.to_int64()) / factorial(alpha);
      out.add(OpeKey{1, -(alpha + p), alpha, target}, c);
    }
  }
  return out;
}

std::string b_symbol(int p, int x, bool tilde) {
  return std::string(tilde ? "Bt" : "B") + "[" + std::to_string(p) + "," +
         std::to_string(x) + "]";
}

CouplingKey SuperCoupling::key(int p) const {
  if (fixed_internal_spin) return bracket_key(s1, s2, 1);
  return bracket_key(s1, s2, p);
}

std::vector<int> SuperCoupling::grades() const { return p_range(s1, s2); }

SymbolicRawOpeTemplate build_g_ope(HalfInt q1, HalfInt q2, const BTable& b,
                                   const BTable& btilde, const CouplingRegistry& reg,
                                   const SuperCoupling& sc,
                                   std::optional<int> truncate_p) {
  auto entry = [](const BTable& t, int p, int x, bool tilde) {
    auto it = t.find({p, x});
    if (it != t.end()) return Polynomial(it->second);
    return Polynomial::variable(b_symbol(p, x, tilde));
  };
  SymbolicRawOpeTemplate out;
  for (int p : grades(sc.grades(), truncate_p)) {
    const Rational half_kappa = reg.lookup(sc.key(p)) / Rational(2);
    const HalfInt q3 = q1 + q2 - HalfInt(1 + p);
    for (int x = 0; x <= p; ++x) {
      const Rational w = half_kappa * template_weight(q1, q2, p, x);
      if (w.is_zero()) continue;
      const std::pair<Family, Polynomial> parts[] = {
          {Family::wtilde, entry(b, p, x, false)},
          {Family::wtilde2, Polynomial(sign_power(p)) * entry(btilde, p, x, true)},
      };
      for (const auto& [family, bcoef] : parts) {
        Polynomial c = bcoef;
        c *= w;
        if (c.is_zero()) continue;
        BasicRawTerm<Polynomial> term;
        term.coeff = c;
        term.hol_pole = 1;
        term.pole = 1;
        term.dz = p - x;
        term.dw = x;
        term.target = GeneratorLabel{family, q3, std::nullopt};
        term.p = p;
        term.x = x;
        out.terms.push_back(term);
      }
    }
  }
  return out;
}

template <class C>
BasicOpeExpansion<C> canonicalize_term(const BasicRawTerm<C>& t) {
  BasicOpeExpansion<C> out;
  // dzb^k (zb-wb)^{-a} = (-1)^k (a)_k (zb-wb)^{-a-k}
  const Rational zfactor = sign_power(t.dz) * pochhammer_rising(Rational(t.pole), t.dz);
  const int a = t.pole + t.dz;
  for (int j = 0; j <= t.dw; ++j) {
    // dwb^j (zb-wb)^{-a} = (a)_j (zb-wb)^{-a-j}
    const Rational f =
        zfactor * binomial(Rational(t.dw), j) * pochhammer_rising(Rational(a), j);
    if (f.is_zero()) continue;
    out.add(OpeKey{t.hol_pole, a + j, t.dw - j + t.target_dbar, t.target},
            t.coeff * from_rational<C>(f));
  }
  return out;
}

template <class C>
BasicOpeExpansion<C> canonicalize(const BasicRawOpeTemplate<C>& t) {
  BasicOpeExpansion<C> out;
  for (const auto& term : t.terms) out.add(canonicalize_term(term));
  return out;
}

template <class C>
BasicRawOpeTemplate<C> to_raw(const BasicOpeExpansion<C>& e) {
  BasicRawOpeTemplate<C> out;
  for (const auto& [k, c] : e.terms()) {
    BasicRawTerm<C> term;
    term.coeff = c;
    term.hol_pole = k.hol_pole;
    term.pole = k.antihol_pole;
    term.dz = 0;
    term.dw = 0;
    term.target_dbar = k.dbar;
    term.target = k.target;
    term.p = -1;
    term.x = -1;
    out.terms.push_back(term);
  }
  return out;
}

Rational zbar_contour(ContourRule rule, const Rational& A, int B) {
  switch (rule) {
    case ContourRule::formal:
      return -binomial(A, B - 1);
    case ContourRule::alternating:
      return sign_power(B) * binomial(A, B - 1);
    case ContourRule::origin: {
      const Rational lower = -A - Rational(1);
      if (!lower.is_integer()) {
        throw DomainError("origin contour needs an integer power of zb");
      }
      const Rational parity = A + Rational(B + 1);
      return sign_power(parity.to_int64()) * binomial(Rational(-B), lower.to_int64());
    }
  }
  throw DomainError("unknown contour rule");
}

HalfInt extraction_weight(const GeneratorLabel& l, WeightConvention w) {
  if (w == WeightConvention::soft) return soft_hbar(l);
  return l.q;
}

template <class C>
BasicModeCombination<C> mode_extract(const BasicOpeExpansion<C>& e, HalfInt m,
                                     HalfInt n, HalfInt hbar1, HalfInt hbar2,
                                     ContourRule rule, WeightConvention w) {
  BasicModeCombination<C> out;
  const Rational A = m.to_rational() + hbar1.to_rational() - Rational(1);
  for (const auto& [k, c] : e.terms()) {
    if (k.hol_pole != 1) continue;
    const HalfInt hbar3 = extraction_weight(k.target, w);
    const HalfInt j = m + n + hbar1 + hbar2 - HalfInt(k.antihol_pole) - hbar3 -
                      HalfInt(k.dbar);
    const Rational f = zbar_contour(rule, A, k.antihol_pole) *
                       pochhammer_falling(-j.to_rational() - hbar3.to_rational(), k.dbar);
    if (f.is_zero()) continue;
    const C coeff = c * from_rational<C>(f);
    const GeneratorMode target{k.target, j};
    if (in_wedge(target)) {
      out.add(target, coeff);
    } else {
      out.add_diagnostic(Diagnostic{
          "target-outside-wedge",
          to_string(target) + " dropped with coefficient " + coeff.to_string()});
    }
  }
  return out;
}

ModeCombination mode_extract_soft(const OpeExpansion& e, const GeneratorMode& a,
                                  const GeneratorMode& b) {
  return mode_extract(e, a.m, b.m, soft_hbar(a.label), soft_hbar(b.label),
                      ContourRule::origin, WeightConvention::soft);
}

std::string to_string(const OpeExpansion& e) { return render(e); }
std::string to_string(const SymbolicOpeExpansion& e) { return render(e); }

template BasicOpeExpansion<Rational> canonicalize(const BasicRawOpeTemplate<Rational>&);
template BasicOpeExpansion<Polynomial> canonicalize(const BasicRawOpeTemplate<Polynomial>&);
template BasicOpeExpansion<Rational> canonicalize_term(const BasicRawTerm<Rational>&);
template BasicOpeExpansion<Polynomial> canonicalize_term(const BasicRawTerm<Polynomial>&);
template BasicRawOpeTemplate<Rational> to_raw(const BasicOpeExpansion<Rational>&);
template BasicRawOpeTemplate<Polynomial> to_raw(const BasicOpeExpansion<Polynomial>&);
template BasicModeCombination<Rational> mode_extract(const BasicOpeExpansion<Rational>&,
                                                     HalfInt, HalfInt, HalfInt, HalfInt,
                                                     ContourRule, WeightConvention);
template BasicModeCombination<Polynomial> mode_extract(const BasicOpeExpansion<Polynomial>&,
                                                       HalfInt, HalfInt, HalfInt, HalfInt,
                                                       ContourRule, WeightConvention);

}  // namespace walg
