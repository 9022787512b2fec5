#ifndef WALG_SUPERTWIST_HPP
#define WALG_SUPERTWIST_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "walg/arith.hpp"
#include "walg/combination.hpp"
#include "walg/coupling.hpp"
#include "walg/generator.hpp"
#include "walg/ope.hpp"

namespace walg {

/// G^{q+}_r or G^{q-}_r with |r| <= q-1 and q-1-|r| integral.
class FermionicMode {
 public:
  FermionicMode(Family family, HalfInt q, HalfInt r);
  Family family() const noexcept { return label_.family; }
  HalfInt q() const noexcept { return label_.q; }
  HalfInt r() const noexcept { return r_; }
  const GeneratorLabel& label() const noexcept { return label_; }
  GeneratorMode mode() const { return GeneratorMode{label_, r_}; }

  friend bool operator==(const FermionicMode&, const FermionicMode&) = default;

 private:
  GeneratorLabel label_;
  HalfInt r_;
};

/// The BRST charge Q = G^{3/2+}_{-1/2}. Any other mode is rejected.
class BrstOperator {
 public:
  explicit BrstOperator(const FermionicMode& mode);
  const FermionicMode& mode() const noexcept { return mode_; }

 private:
  FermionicMode mode_;
};

BrstOperator brst();

/// Modes r of G^{3/2+}(zb) = sum_r G_r zb^{-r-3/2} picked out by the contour
/// integral of zb^{-r-3/2} around the origin, scanned over |r| <= r_max.
std::vector<HalfInt> brst_contour_selection(HalfInt r_max);

/// {G^{q1-}_r, G^{q2+}_s} by mode extraction of the fermionic OPE template.
/// Entries missing from `b` / `btilde` stay symbolic.
SymbolicModeCombination gg_anticommutator(const FermionicMode& a, const FermionicMode& b,
                                          const CouplingRegistry& reg, const BTable& bt,
                                          const BTable& btt, const SuperCoupling& sc = {});

/// Values of B and B~ that reproduce the realization OPE at grades 0 and 1.
BTable derived_b();
BTable derived_btilde();

/// V^q as a local generator at (w, wb): keys have hol_pole = antihol_pole = 0.
struct VhatExpression {
  SymbolicOpeExpansion generator;
  /// (p, x) of every template term that contributed.
  std::vector<std::pair<int, int>> origins;
  /// Number of contributions whose template term had x != p (must be 0).
  std::size_t off_diagonal_remnants = 0;
};

/// Contour route: canonicalize G^{3/2-}(z) G^{q+}(w), integrate over zb
/// (keeping the simple antiholomorphic pole) and drop the holomorphic pole.
VhatExpression vhat_expression(HalfInt q, const BTable& bt, const BTable& btt,
                               const CouplingRegistry& reg, const SuperCoupling& sc = {});

/// Closed form  sum_p (kappa/2) (2-p)_p dbar^p [(-1)^p B^{p,p} W~ + B~^{p,p} W~~]
/// with labels q + 1/2 - p.
SymbolicOpeExpansion vhat_closed_form(HalfInt q, const BTable& bt, const BTable& btt,
                                      const CouplingRegistry& reg,
                                      const SuperCoupling& sc = {});

/// Structure constants ghat(q1, q2, m, n, p) of the topological algebra. The
/// p = 1 entry m(q2-1) - n(q1-1) is always available; other entries only when
/// set explicitly.
class GhatTable {
 public:
  using Key = std::tuple<HalfInt, HalfInt, HalfInt, HalfInt, int>;
  void set(HalfInt q1, HalfInt q2, HalfInt m, HalfInt n, int p, const Rational& v);
  std::optional<Rational> lookup(HalfInt q1, HalfInt q2, HalfInt m, HalfInt n, int p) const;
  const std::map<Key, Rational>& explicit_entries() const noexcept { return entries_; }

 private:
  std::map<Key, Rational> entries_;
};

Rational ghat_p1(HalfInt q1, HalfInt q2, HalfInt m, HalfInt n);
/// Name of the polynomial variable that stands for an unknown ghat entry.
std::string ghat_symbol(int p);

/// [V^{q1}_m, V^{q2}_n] = sum_p ghat(q1,q2,m,n,p) V^{q1+q2-p-1}_{m+n}, p from 0
/// while the target weight stays >= 1 (or up to p_max). Out-of-wedge targets
/// are dropped with a diagnostic.
SymbolicModeCombination vhat_bracket(HalfInt q1, HalfInt m, HalfInt q2, HalfInt n,
                                     const GhatTable& ghat,
                                     std::optional<int> p_max = std::nullopt);

/// {Q, Q}, {G+, G+} and {G^, G^}: identically zero.
SymbolicModeCombination g_pairing_zero(const FermionicMode& a, const FermionicMode& b);

/// [Q, {Q, g}] for the G- mode g that defines a V mode, through the graded
/// Jacobi identity  2 [Q, {Q, g}] = [{Q, Q}, g].
SymbolicModeCombination brst_variation_of_vhat(const FermionicMode& g);

enum class RescaledBracket {
  vv,  // [v^{q1}_m, v^{q2}_n]
  vg,  // [v^{q1}_m, G^{q2}_{n+1/2}]
};

enum class LimitStatus { diverges, survives, vanishes };

struct RescaledTerm {
  int p = 0;
  int lambda_power = 0;
  LimitStatus status = LimitStatus::survives;
  GeneratorMode target;
  Polynomial coeff;
};

struct RescaleReport {
  /// Every grade of the unreduced bracket with its power of lambda.
  std::vector<RescaledTerm> terms;
  /// Terms with lambda^0 (grade p_keep): the reduced bracket.
  SymbolicModeCombination reduced;
  /// True when a term with a negative power of lambda has a coefficient
  /// that is not known to vanish.
  bool divergent = false;
};

/// Rescales V^q -> lambda^{q-2} v^q and G^q -> lambda^{q-2} G^q, expands the
/// unreduced bracket and takes lambda -> 0.
RescaleReport rescale_limit(RescaledBracket which, HalfInt q1, HalfInt m, HalfInt q2,
                            HalfInt n, const GhatTable& ghat, int p_keep = 1);

/// Reduced brackets of w_{1+infinity} form.
ModeCombination reduced_vv(HalfInt q1, HalfInt m, HalfInt q2, HalfInt n);
ModeCombination reduced_vg(HalfInt q1, HalfInt m, HalfInt q2, HalfInt n);

/// Jacobi residual of the reduced v bracket on three modes.
ModeCombination reduced_jacobi_residual(const GeneratorMode& a, const GeneratorMode& b,
                                        const GeneratorMode& c);

std::string to_string(LimitStatus s);

}  // namespace walg

#endif  // WALG_SUPERTWIST_HPP
