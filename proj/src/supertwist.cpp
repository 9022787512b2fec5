#include "walg/supertwist.hpp"

#include <algorithm>

#include "walg/error.hpp"

namespace walg {

namespace {

const HalfInt kHalf = HalfInt::from_doubled(1);
const HalfInt kThreeHalves = HalfInt::from_doubled(3);

Polynomial b_entry(const BTable& t, int p, int x, bool tilde) {
  auto it = t.find({p, x});
  if (it != t.end()) return Polynomial(it->second);
  return Polynomial::variable(b_symbol(p, x, tilde));
}

}  // namespace

FermionicMode::FermionicMode(Family family, HalfInt q, HalfInt r)
    : label_{family, q, std::nullopt}, r_(r) {
  if (family != Family::gplus && family != Family::gminus) {
    throw DomainError("fermionic mode needs family gplus or gminus, got " +
                      family_name(family));
  }
  if (q < kThreeHalves) throw DomainError("fermionic weight q must be >= 3/2");
  if (!in_wedge(GeneratorMode{label_, r_})) {
    throw DomainError("mode r = " + r.to_string() + " outside the wedge of q = " +
                      q.to_string());
  }
}

BrstOperator::BrstOperator(const FermionicMode& mode) : mode_(mode) {
  if (mode.family() != Family::gplus || mode.q() != kThreeHalves || mode.r() != -kHalf) {
    throw DomainError("the BRST operator is G^{3/2+}_{-1/2}");
  }
}

BrstOperator brst() { return BrstOperator(FermionicMode(Family::gplus, kThreeHalves, -kHalf)); }

std::vector<HalfInt> brst_contour_selection(HalfInt r_max) {
  std::vector<HalfInt> out;
  // oint dzb/(2 pi i) zb^e = 1 exactly when e = -1.
  for (HalfInt r = -r_max; r <= r_max; r += HalfInt(1)) {
    const HalfInt e = -r - kThreeHalves;
    if (e == HalfInt(-1)) out.push_back(r);
  }
  return out;
}

SymbolicModeCombination gg_anticommutator(const FermionicMode& a, const FermionicMode& b,
                                          const CouplingRegistry& reg, const BTable& bt,
                                          const BTable& btt, const SuperCoupling& sc) {
  if (a.family() != Family::gminus || b.family() != Family::gplus) {
    throw DomainError("gg_anticommutator expects a G- mode followed by a G+ mode");
  }
  const auto ope = canonicalize(build_g_ope(a.q(), b.q(), bt, btt, reg, sc));
  return mode_extract(ope, a.r(), b.r(), a.q(), b.q());
}

BTable derived_b() { return {{{0, 0}, Rational(4)}, {{1, 0}, Rational(0)}, {{1, 1}, Rational(0)}}; }

BTable derived_btilde() {
  return {{{0, 0}, Rational(0)}, {{1, 0}, Rational(-2)}, {{1, 1}, Rational(-2)}};
}

VhatExpression vhat_expression(HalfInt q, const BTable& bt, const BTable& btt,
                               const CouplingRegistry& reg, const SuperCoupling& sc) {
  VhatExpression out;
  const auto raw = build_g_ope(kThreeHalves, q, bt, btt, reg, sc);
  for (const auto& term : raw.terms) {
    const auto canonical = canonicalize_term(term);
    for (const auto& [key, c] : canonical.terms()) {
      // oint dzb/(2 pi i) (zb-wb)^{-a} = delta_{a,1}
      if (key.antihol_pole != 1) continue;
      // oint dz/(2 pi i) (z-w)^{-1} = 1
      if (key.hol_pole != 1) continue;
      out.generator.add(OpeKey{0, 0, key.dbar, key.target}, c);
      out.origins.emplace_back(term.p, term.x);
      if (term.x != term.p) ++out.off_diagonal_remnants;
    }
  }
  std::sort(out.origins.begin(), out.origins.end());
  out.origins.erase(std::unique(out.origins.begin(), out.origins.end()), out.origins.end());
  return out;
}

SymbolicOpeExpansion vhat_closed_form(HalfInt q, const BTable& bt, const BTable& btt,
                                      const CouplingRegistry& reg, const SuperCoupling& sc) {
  SymbolicOpeExpansion out;
  for (int p : sc.grades()) {
    const HalfInt label = q + kHalf - HalfInt(p);
    if (label < HalfInt(1)) continue;
    const Rational f = reg.lookup(sc.key(p)) / Rational(2) *
                       pochhammer_rising(Rational(2 - p), p);
    if (f.is_zero()) continue;
    out.add(OpeKey{0, 0, p, GeneratorLabel{Family::wtilde, label, std::nullopt}},
            Polynomial(f * sign_power(p)) * b_entry(bt, p, p, false));
    out.add(OpeKey{0, 0, p, GeneratorLabel{Family::wtilde2, label, std::nullopt}},
            Polynomial(f) * b_entry(btt, p, p, true));
  }
  return out;
}

void GhatTable::set(HalfInt q1, HalfInt q2, HalfInt m, HalfInt n, int p, const Rational& v) {
  entries_[Key{q1, q2, m, n, p}] = v;
}

std::optional<Rational> GhatTable::lookup(HalfInt q1, HalfInt q2, HalfInt m, HalfInt n,
                                          int p) const {
  if (auto it = entries_.find(Key{q1, q2, m, n, p}); it != entries_.end()) return it->second;
  if (p == 1) return ghat_p1(q1, q2, m, n);
  return std::nullopt;
}

Rational ghat_p1(HalfInt q1, HalfInt q2, HalfInt m, HalfInt n) {
  const Rational one(1);
  return m.to_rational() * (q2.to_rational() - one) - n.to_rational() * (q1.to_rational() - one);
}

std::string ghat_symbol(int p) { return "ghat[" + std::to_string(p) + "]"; }

namespace {

/// Sum_p ghat_p X^{q1+q2-p-1}_{target_m}, with unknown entries symbolic.
struct GradedTerm {
  int p;
  HalfInt q3;
  Polynomial coeff;
};

std::vector<GradedTerm> graded_terms(HalfInt q1, HalfInt m, HalfInt q2, HalfInt n,
                                     const GhatTable& ghat, std::optional<int> p_max) {
  std::vector<GradedTerm> out;
  for (int p = 0;; ++p) {
    if (p_max && p > *p_max) break;
    const HalfInt q3 = q1 + q2 - HalfInt(p + 1);
    if (q3 < HalfInt(1)) break;
    const auto g = ghat.lookup(q1, q2, m, n, p);
    out.push_back({p, q3, g ? Polynomial(*g) : Polynomial::variable(ghat_symbol(p))});
  }
  return out;
}

}  // namespace

SymbolicModeCombination vhat_bracket(HalfInt q1, HalfInt m, HalfInt q2, HalfInt n,
                                     const GhatTable& ghat, std::optional<int> p_max) {
  SymbolicModeCombination out;
  for (const auto& t : graded_terms(q1, m, q2, n, ghat, p_max)) {
    const GeneratorMode target{GeneratorLabel{Family::vhat, t.q3, std::nullopt}, m + n};
    if (in_wedge(target)) {
      out.add(target, t.coeff);
    } else if (!t.coeff.is_zero()) {
      out.add_diagnostic(Diagnostic{"target-outside-wedge", to_string(target) +
                                                                " dropped with coefficient " +
                                                                t.coeff.to_string()});
    }
  }
  return out;
}

SymbolicModeCombination g_pairing_zero(const FermionicMode& a, const FermionicMode& b) {
  if (a.family() != b.family()) {
    throw DomainError("mixed-sign fermionic pair: use gg_anticommutator");
  }
  return {};
}

SymbolicModeCombination brst_variation_of_vhat(const FermionicMode& g) {
  if (g.family() != Family::gminus) throw DomainError("V is generated from a G- mode");
  const FermionicMode qm = brst().mode();
  const SymbolicModeCombination qq = g_pairing_zero(qm, qm);
  // [{Q,Q}, G] is linear in {Q,Q}: one bracket per term of {Q,Q}, and there
  // are none, so the result stays empty.
  if (!qq.empty()) throw DomainError("internal: {Q,Q} must vanish");
  return {};
}

std::string to_string(LimitStatus s) {
  switch (s) {
    case LimitStatus::diverges:
      return "diverges";
    case LimitStatus::survives:
      return "survives";
    case LimitStatus::vanishes:
      return "vanishes";
  }
  return "?";
}

RescaleReport rescale_limit(RescaledBracket which, HalfInt q1, HalfInt m, HalfInt q2,
                            HalfInt n, const GhatTable& ghat, int p_keep) {
  RescaleReport out;
  const Family family = which == RescaledBracket::vv ? Family::v : Family::ghat;
  const HalfInt target_m = which == RescaledBracket::vv ? m + n : m + n + kHalf;
  const HalfInt two(2);
  for (const auto& t : graded_terms(q1, m, q2, n, ghat, std::nullopt)) {
    // lambda^{q1-2} lambda^{q2-2} X^{q3} = lambda^{q1+q2-4-(q3-2)} x^{q3}
    const HalfInt power = q1 + q2 - two - two - (t.q3 - two);
    RescaledTerm r;
    r.p = t.p;
    r.lambda_power = static_cast<int>(power.to_int());
    r.target = GeneratorMode{GeneratorLabel{family, t.q3, std::nullopt}, target_m};
    r.coeff = t.coeff;
    if (r.lambda_power < 0) {
      r.status = LimitStatus::diverges;
      if (!r.coeff.is_zero()) out.divergent = true;
    } else if (r.lambda_power == 0) {
      r.status = LimitStatus::survives;
      if (t.p == p_keep) out.reduced.add(r.target, r.coeff);
    } else {
      r.status = LimitStatus::vanishes;
    }
    out.terms.push_back(r);
  }
  return out;
}

ModeCombination reduced_vv(HalfInt q1, HalfInt m, HalfInt q2, HalfInt n) {
  ModeCombination out;
  out.add(GeneratorMode{GeneratorLabel{Family::v, q1 + q2 - HalfInt(2), std::nullopt}, m + n},
          ghat_p1(q1, q2, m, n));
  return out;
}

ModeCombination reduced_vg(HalfInt q1, HalfInt m, HalfInt q2, HalfInt n) {
  ModeCombination out;
  out.add(GeneratorMode{GeneratorLabel{Family::ghat, q1 + q2 - HalfInt(2), std::nullopt},
                        m + n + kHalf},
          ghat_p1(q1, q2, m, n));
  return out;
}

namespace {

ModeCombination bracket_with(const GeneratorMode& a, const ModeCombination& b) {
  ModeCombination out;
  for (const auto& [mode, c] : b.terms()) {
    out.add(reduced_vv(a.label.q, a.m, mode.label.q, mode.m), c);
  }
  return out;
}

ModeCombination single(const GeneratorMode& x) {
  ModeCombination out;
  out.add(x, Rational(1));
  return out;
}

}  // namespace

ModeCombination reduced_jacobi_residual(const GeneratorMode& a, const GeneratorMode& b,
                                        const GeneratorMode& c) {
  // [a,[b,c]] + [b,[c,a]] + [c,[a,b]]
  ModeCombination out;
  out.add(bracket_with(a, bracket_with(b, single(c))), Rational(1));
  out.add(bracket_with(b, bracket_with(c, single(a))), Rational(1));
  out.add(bracket_with(c, bracket_with(a, single(b))), Rational(1));
  return out;
}

}  // namespace walg
