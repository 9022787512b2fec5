#ifndef WALG_OPE_HPP
#define WALG_OPE_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "walg/arith.hpp"
#include "walg/combination.hpp"
#include "walg/coupling.hpp"
#include "walg/generator.hpp"
#include "walg/polynomial.hpp"

namespace walg {

/// Shape of one OPE summand:
///   coeff * (z-w)^{-hol_pole} (zb-wb)^{-antihol_pole} dbar^{dbar} target(w,wb).
/// A negative antihol_pole is a positive power of (zb-wb).
struct OpeKey {
  int hol_pole = 1;
  int antihol_pole = 1;
  int dbar = 0;
  GeneratorLabel target;

  friend auto operator<=>(const OpeKey&, const OpeKey&) = default;
  friend bool operator==(const OpeKey&, const OpeKey&) = default;
};

template <class C>
struct BasicOpeTerm {
  OpeKey key;
  C coeff;
};

/// Canonical OPE: merged by key, no zero coefficients, ordered by key.
template <class C>
class BasicOpeExpansion {
 public:
  void add(const OpeKey& key, const C& coeff) {
    if (is_zero(coeff)) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
      it->second = it->second + coeff;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }
  void add(const BasicOpeExpansion& other) {
    for (const auto& [k, c] : other.terms_) add(k, c);
  }
  C coefficient(const OpeKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? C(0) : it->second;
  }
  const std::map<OpeKey, C>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  friend bool operator==(const BasicOpeExpansion& a, const BasicOpeExpansion& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<OpeKey, C> terms_;
};

/// One printed summand
///   coeff (z-w)^{-hol} dzb^{dz} dwb^{dw} [(dbar^{target_dbar} target) (zb-wb)^{-pole}],
/// remembering the grade p and summation index x it came from (-1 if none).
template <class C>
struct BasicRawTerm {
  C coeff;
  int hol_pole = 1;
  int pole = 1;
  int dz = 0;
  int dw = 0;
  int target_dbar = 0;
  GeneratorLabel target;
  int p = 0;
  int x = 0;
};

template <class C>
struct BasicRawOpeTemplate {
  std::vector<BasicRawTerm<C>> terms;
};

using OpeExpansion = BasicOpeExpansion<Rational>;
using SymbolicOpeExpansion = BasicOpeExpansion<Polynomial>;
using RawOpeTemplate = BasicRawOpeTemplate<Rational>;
using SymbolicRawOpeTemplate = BasicRawOpeTemplate<Polynomial>;

/// The W~ x W~ template: grades from p_range(s1,s2), optionally p <= truncate_p.
RawOpeTemplate build_wtilde_ope(HalfInt q1, HalfInt s1, HalfInt q2, HalfInt s2,
                                const CouplingRegistry& reg,
                                std::optional<int> truncate_p = std::nullopt);

/// Soft-current OPE H^{k1,s1} H^{k2,s2} truncated at dbar order alpha_max.
OpeExpansion build_soft_ope(HalfInt k1, HalfInt s1, HalfInt k2, HalfInt s2,
                            const CouplingRegistry& reg, int alpha_max,
                            std::optional<int> truncate_p = std::nullopt);

/// Known entries of B^{p,x} or B~^{p,x}; absent entries become the
/// polynomial variables "B[p,x]" / "Bt[p,x]".
using BTable = std::map<std::pair<int, int>, Rational>;
std::string b_symbol(int p, int x, bool tilde);

/// Coupling convention of the fermionic sector: spins are not carried by
/// the G labels, so the key is built from (s1, s2) and either the fixed
/// internal spin s1+s2-2 or the grade-dependent s1+s2-p-1.
struct SuperCoupling {
  HalfInt s1 = HalfInt::from_doubled(3);
  HalfInt s2 = HalfInt::from_doubled(3);
  bool fixed_internal_spin = true;
  CouplingKey key(int p) const;
  std::vector<int> grades() const;
};

/// The G^{q1-} G^{q2+} template with W~ and doubly-tilde W~ targets.
SymbolicRawOpeTemplate build_g_ope(HalfInt q1, HalfInt q2, const BTable& b,
                                   const BTable& btilde, const CouplingRegistry& reg,
                                   const SuperCoupling& sc = {},
                                   std::optional<int> truncate_p = std::nullopt);

/// Applies all dzb to the pole and distributes dwb by Leibniz.
template <class C>
BasicOpeExpansion<C> canonicalize(const BasicRawOpeTemplate<C>& t);
template <class C>
BasicOpeExpansion<C> canonicalize_term(const BasicRawTerm<C>& t);
/// Embeds a canonical expansion as a template with no pending derivatives.
template <class C>
BasicRawOpeTemplate<C> to_raw(const BasicOpeExpansion<C>& e);

/// Rule used for the antiholomorphic contour integral of zb^A (zb-wb)^{-B}.
enum class ContourRule {
  /// -C(A, B-1) wb^{A-B+1}: minus the residue at zb = wb.
  formal,
  /// (-1)^B C(A, B-1) wb^{A-B+1}: sign variant kept for comparison only.
  alternating,
  /// (-1)^{A+B+1} C(-B, -A-1) wb^{A-B+1}: contour around the origin, valid
  /// for positive powers (B <= 0) of (zb-wb).
  origin,
};

/// Coefficient of wb^{A-B+1} produced by the rule.
Rational zbar_contour(ContourRule rule, const Rational& A, int B);

/// Weight used in the mode measures and the target mode expansion.
enum class WeightConvention {
  /// hbar = q for every non-soft family.
  weight_q,
  /// hbar = (k-s)/2 for soft currents.
  soft,
};

HalfInt extraction_weight(const GeneratorLabel& l, WeightConvention w);

/// Mode extraction with explicit weights of the two fields.
template <class C>
BasicModeCombination<C> mode_extract(const BasicOpeExpansion<C>& e, HalfInt m,
                                     HalfInt n, HalfInt hbar1, HalfInt hbar2,
                                     ContourRule rule, WeightConvention w);

/// W~-type extraction: hbar = q, formal residue rule.
template <class C>
BasicModeCombination<C> mode_extract(const BasicOpeExpansion<C>& e, HalfInt m,
                                     HalfInt n, HalfInt q1, HalfInt q2) {
  return mode_extract(e, m, n, q1, q2, ContourRule::formal, WeightConvention::weight_q);
}

/// Soft-current extraction: hbar = (k-s)/2, origin contour.
ModeCombination mode_extract_soft(const OpeExpansion& e, const GeneratorMode& a,
                                  const GeneratorMode& b);

std::string to_string(const OpeExpansion& e);
std::string to_string(const SymbolicOpeExpansion& e);

extern template BasicOpeExpansion<Rational> canonicalize(const BasicRawOpeTemplate<Rational>&);
extern template BasicOpeExpansion<Polynomial> canonicalize(
    const BasicRawOpeTemplate<Polynomial>&);
extern template BasicOpeExpansion<Rational> canonicalize_term(const BasicRawTerm<Rational>&);
extern template BasicOpeExpansion<Polynomial> canonicalize_term(
    const BasicRawTerm<Polynomial>&);
extern template BasicRawOpeTemplate<Rational> to_raw(const BasicOpeExpansion<Rational>&);
extern template BasicRawOpeTemplate<Polynomial> to_raw(const BasicOpeExpansion<Polynomial>&);
extern template BasicModeCombination<Rational> mode_extract(const BasicOpeExpansion<Rational>&,
                                                            HalfInt, HalfInt, HalfInt,
                                                            HalfInt, ContourRule,
                                                            WeightConvention);
extern template BasicModeCombination<Polynomial> mode_extract(
    const BasicOpeExpansion<Polynomial>&, HalfInt, HalfInt, HalfInt, HalfInt, ContourRule,
    WeightConvention);

}  // namespace walg

#endif  // WALG_OPE_HPP
