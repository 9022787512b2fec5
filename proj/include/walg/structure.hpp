#ifndef WALG_STRUCTURE_HPP
#define WALG_STRUCTURE_HPP

#include <optional>
#include <vector>

#include "walg/arith.hpp"
#include "walg/combination.hpp"
#include "walg/coupling.hpp"
#include "walg/generator.hpp"
#include "walg/polynomial.hpp"

namespace walg {

/// Inclusive grades max(s1+s2-3,0) .. max(s1+s2+1,0).
/// Throws DomainError when s1+s2 is not an integer.
std::vector<int> p_range(HalfInt s1, HalfInt s2);

/// Which of the two equivalent sums to evaluate for N.
enum class NRep { def, lemma };

/// N(q1,q2,m,n,p) over any commutative ring containing Q.
template <class R>
R n_coeff_generic(const R& q1, const R& q2, const R& m, const R& n, int p,
                  NRep rep) {
  const R one{Rational(1)};
  R total{Rational(0)};
  for (int x = 0; x <= p; ++x) {
    R term{sign_power(p - x) * binomial(Rational(p), x)};
    if (rep == NRep::def) {
      term = term * falling_product(m + q1 - one, p - x) *
             falling_product(-m + q1 - one, x) * falling_product(n + q2 - one, x) *
             falling_product(-n + q2 - one, p - x);
    } else {
      const R two{Rational(2)};
      term = term * falling_product(two * q2 - two - R{Rational(x)}, p - x) *
             rising_product(two * q1 - one - R{Rational(p)}, x) *
             falling_product(m + q1 - one, p - x) * falling_product(n + q2 - one, x);
    }
    total = total + term;
  }
  return total;
}

/// M(q1,q2,m,n,p) = sum_x (-1)^x C(p,x) [2q2-2-x]_{p-x} (2q1-1-p)_x m^{p-x} n^x.
template <class R>
R m_poly_generic(const R& q1, const R& q2, const R& m, const R& n, int p) {
  const R one{Rational(1)};
  const R two{Rational(2)};
  R total{Rational(0)};
  for (int x = 0; x <= p; ++x) {
    R term{sign_power(x) * binomial(Rational(p), x)};
    term = term * falling_product(two * q2 - two - R{Rational(x)}, p - x) *
           rising_product(two * q1 - one - R{Rational(p)}, x);
    for (int i = 0; i < p - x; ++i) term = term * m;
    for (int i = 0; i < x; ++i) term = term * n;
    total = total + term;
  }
  return total;
}

Rational n_coeff(HalfInt q1, HalfInt q2, HalfInt m, HalfInt n, int p,
                 NRep rep = NRep::def);
/// N with symbolic mode indices, as a polynomial in the variables "m", "n".
Polynomial n_poly(HalfInt q1, HalfInt q2, int p, NRep rep = NRep::def);
/// M as a polynomial in the variables "m", "n".
Polynomial m_poly(HalfInt q1, HalfInt q2, int p);

/// [W~_m^{q1,s1}, W~_n^{q2,s2}] over the grades of p_range (optionally only
/// p <= truncate_p). Targets outside their wedge or with q < 1 are dropped
/// and listed in the diagnostics. Throws DomainError on invalid inputs or a
/// missing coupling.
ModeCombination wtilde_bracket(const GeneratorMode& a, const GeneratorMode& b,
                               const CouplingRegistry& reg,
                               std::optional<int> truncate_p = std::nullopt);

/// Antiholomorphic weight (k-s)/2 of a soft current label.
HalfInt soft_hbar(const GeneratorLabel& l);

/// Coefficient c_p with [H_m, H_n] = -sum_p kappa/2 c_p H_{m+n}.
Rational soft_coefficient(HalfInt hbar1, HalfInt hbar2, HalfInt m, HalfInt n, int p);

/// Bracket of two soft current modes in binomial form.
ModeCombination soft_bracket(const GeneratorMode& a, const GeneratorMode& b,
                             const CouplingRegistry& reg,
                             std::optional<int> truncate_p = std::nullopt);

struct SoftToWtilde {
  Rational factor;       // W~_m = factor * H_m
  GeneratorMode w_mode;  // the W~ mode with the same s and m
};

/// Normalization map H^{s+2(1-q),s}_m -> W~^{q,s}_m.
SoftToWtilde wtilde_from_soft(const GeneratorMode& h_mode, HalfInt q);
/// Soft label H^{s+2(1-q),s} matching W~^{q,s}.
GeneratorLabel soft_label_for(HalfInt q, HalfInt s);

/// [[a,b],c] + [[b,c],a] + [[c,a],b] with every bracket truncated to
/// p <= truncate_p when given.
ModeCombination jacobi_residual(const GeneratorMode& a, const GeneratorMode& b,
                                const GeneratorMode& c, const CouplingRegistry& reg,
                                std::optional<int> truncate_p = std::nullopt);

struct VanishingEntry {
  int p = 0;
  bool vanishes = false;
  Polynomial n;  // N(q1,q2,m,n,p) as a polynomial in m, n
};

/// For each p in p_range(s1,s2), whether N(q1,q2,m,n,p) is the zero
/// polynomial in (m, n).
std::vector<VanishingEntry> vanishing_p_report(HalfInt q1, HalfInt q2, HalfInt s1,
                                               HalfInt s2);

}  // namespace walg

#endif  // WALG_STRUCTURE_HPP
