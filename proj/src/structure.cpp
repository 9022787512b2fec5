#include "walg/structure.hpp"

#include <algorithm>

#include "walg/error.hpp"

namespace walg {

namespace {

void require_wtilde(const GeneratorMode& a, const char* which) {
  if (a.label.family != Family::wtilde) {
    throw DomainError(std::string(which) + " must be a wtilde mode: " + to_string(a));
  }
  if (!a.label.s) {
    throw DomainError(std::string(which) + " needs a spin label: " + to_string(a));
  }
  if (!in_wedge(a)) {
    throw DomainError(std::string(which) + " is outside the wedge: " + to_string(a));
  }
}

void require_soft(const GeneratorMode& a, const char* which) {
  if (a.label.family != Family::h || !a.label.s) {
    throw DomainError(std::string(which) + " must be a soft current mode: " +
                      to_string(a));
  }
  if (!in_wedge(a)) {
    throw DomainError(std::string(which) + " is outside the mode range: " +
                      to_string(a));
  }
}

std::vector<int> truncated(std::vector<int> ps, std::optional<int> truncate_p) {
  if (truncate_p) {
    ps.erase(std::remove_if(ps.begin(), ps.end(),
                            [&](int p) { return p > *truncate_p; }),
             ps.end());
  }
  return ps;
}

void add_or_drop(ModeCombination& out, const GeneratorMode& target,
                 const Rational& coeff, bool keep) {
  if (keep) {
    out.add(target, coeff);
  } else if (!coeff.is_zero()) {
    out.add_diagnostic(Diagnostic{
        "target-outside-wedge",
        to_string(target) + " dropped with coefficient " + coeff.to_string()});
  }
}

}  // namespace

std::vector<int> p_range(HalfInt s1, HalfInt s2) {
  const HalfInt sum = s1 + s2;
  if (!sum.is_integer()) {
    throw DomainError("p range undefined for non-integer s1+s2 = " + sum.to_string());
  }
  const std::int64_t lo = std::max<std::int64_t>(sum.to_int() - 3, 0);
  const std::int64_t hi = std::max<std::int64_t>(sum.to_int() + 1, 0);
  std::vector<int> out;
  for (std::int64_t p = lo; p <= hi; ++p) out.push_back(static_cast<int>(p));
  return out;
}

Rational n_coeff(HalfInt q1, HalfInt q2, HalfInt m, HalfInt n, int p, NRep rep) {
  if (p < 0) throw DomainError("p must be non-negative");
  return n_coeff_generic(q1.to_rational(), q2.to_rational(), m.to_rational(),
                         n.to_rational(), p, rep);
}

Polynomial n_poly(HalfInt q1, HalfInt q2, int p, NRep rep) {
  if (p < 0) throw DomainError("p must be non-negative");
  return n_coeff_generic(Polynomial(q1.to_rational()), Polynomial(q2.to_rational()),
                         Polynomial::variable("m"), Polynomial::variable("n"), p, rep);
}

Polynomial m_poly(HalfInt q1, HalfInt q2, int p) {
  if (p < 0) throw DomainError("p must be non-negative");
  return m_poly_generic(Polynomial(q1.to_rational()), Polynomial(q2.to_rational()),
                        Polynomial::variable("m"), Polynomial::variable("n"), p);
}

ModeCombination wtilde_bracket(const GeneratorMode& a, const GeneratorMode& b,
                               const CouplingRegistry& reg,
                               std::optional<int> truncate_p) {
  require_wtilde(a, "first argument");
  require_wtilde(b, "second argument");
  const HalfInt q1 = a.label.q, q2 = b.label.q;
  const HalfInt s1 = *a.label.s, s2 = *b.label.s;
  ModeCombination out;
  for (int p : truncated(p_range(s1, s2), truncate_p)) {
    const Rational kappa = reg.lookup(bracket_key(s1, s2, p));
    const Rational coeff =
        -kappa / Rational(2) * n_coeff(q1, q2, a.m, b.m, p, NRep::def);
    const HalfInt q3 = q1 + q2 - HalfInt(p + 1);
    const HalfInt s3 = s1 + s2 - HalfInt(p + 1);
    const GeneratorMode target = wtilde_mode(q3, s3, a.m + b.m);
    add_or_drop(out, target, coeff, q3 >= HalfInt(1) && in_wedge(target));
  }
  return out;
}

HalfInt soft_hbar(const GeneratorLabel& l) {
  if (!l.s) throw DomainError("soft current needs a spin: " + to_string(l));
  const HalfInt diff = l.q - *l.s;
  if (diff.doubled() % 2 != 0) {
    throw DomainError("soft current weight (k-s)/2 is not a half-integer: " +
                      to_string(l));
  }
  return HalfInt::from_doubled(diff.doubled() / 2);
}

Rational soft_coefficient(HalfInt hbar1, HalfInt hbar2, HalfInt m, HalfInt n, int p) {
  const Rational h1 = hbar1.to_rational(), h2 = hbar2.to_rational();
  const Rational mm = m.to_rational(), nn = n.to_rational();
  const Rational pp(p);
  Rational total = 0;
  for (int x = 0; x <= p; ++x) {
    const Rational low1 = mm - h1 - pp + Rational(x);
    const Rational low2 = -mm - h1 - Rational(x);
    total += sign_power(p - x) * binomial(pp, x) *
             binomial(mm + nn - h1 - h2 - pp, low1.to_int64()) *
             binomial(-mm - nn - h1 - h2 - pp, low2.to_int64());
  }
  return total;
}

ModeCombination soft_bracket(const GeneratorMode& a, const GeneratorMode& b,
                             const CouplingRegistry& reg,
                             std::optional<int> truncate_p) {
  require_soft(a, "first argument");
  require_soft(b, "second argument");
  const HalfInt s1 = *a.label.s, s2 = *b.label.s;
  const HalfInt h1 = soft_hbar(a.label), h2 = soft_hbar(b.label);
  ModeCombination out;
  for (int p : truncated(p_range(s1, s2), truncate_p)) {
    const Rational kappa = reg.lookup(bracket_key(s1, s2, p));
    const Rational coeff =
        -kappa / Rational(2) * soft_coefficient(h1, h2, a.m, b.m, p);
    const HalfInt k3 = a.label.q + b.label.q + HalfInt(p - 1);
    const HalfInt s3 = s1 + s2 - HalfInt(p + 1);
    const GeneratorMode target = soft_mode(k3, s3, a.m + b.m);
    add_or_drop(out, target, coeff, in_wedge(target));
  }
  return out;
}

GeneratorLabel soft_label_for(HalfInt q, HalfInt s) {
  return GeneratorLabel{Family::h, s + HalfInt(2) - q - q, s};
}

SoftToWtilde wtilde_from_soft(const GeneratorMode& h_mode, HalfInt q) {
  if (h_mode.label.family != Family::h || !h_mode.label.s) {
    throw DomainError("expected a soft current mode: " + to_string(h_mode));
  }
  const HalfInt s = *h_mode.label.s;
  if (h_mode.label != soft_label_for(q, s)) {
    throw DomainError(to_string(h_mode) + " does not have k = s+2(1-q) for q = " +
                      q.to_string());
  }
  const GeneratorMode w = wtilde_mode(q, s, h_mode.m);
  if (!in_wedge(w)) throw DomainError("mode outside the wedge: " + to_string(w));
  const HalfInt top = q - HalfInt(1);
  const Rational factor =
      factorial((top - h_mode.m).to_int()) * factorial((top + h_mode.m).to_int());
  return SoftToWtilde{factor, w};
}

ModeCombination jacobi_residual(const GeneratorMode& a, const GeneratorMode& b,
                                const GeneratorMode& c, const CouplingRegistry& reg,
                                std::optional<int> truncate_p) {
  ModeCombination out;
  auto nested = [&](const GeneratorMode& x, const GeneratorMode& y,
                    const GeneratorMode& z) {
    const ModeCombination inner = wtilde_bracket(x, y, reg, truncate_p);
    for (const auto& [mode, coeff] : inner.terms()) {
      out.add(wtilde_bracket(mode, z, reg, truncate_p), coeff);
    }
    for (const auto& d : inner.diagnostics()) out.add_diagnostic(d);
  };
  nested(a, b, c);
  nested(b, c, a);
  nested(c, a, b);
  return out;
}

std::vector<VanishingEntry> vanishing_p_report(HalfInt q1, HalfInt q2, HalfInt s1,
                                               HalfInt s2) {
  std::vector<VanishingEntry> out;
  for (int p : p_range(s1, s2)) {
    Polynomial n = n_poly(q1, q2, p, NRep::def);
    const bool zero = n.is_zero();
    out.push_back(VanishingEntry{p, zero, std::move(n)});
  }
  return out;
}

}  // namespace walg
