#ifndef WALG_FREEFIELD_HPP
#define WALG_FREEFIELD_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "walg/arith.hpp"
#include "walg/combination.hpp"
#include "walg/linsolve.hpp"
#include "walg/ope.hpp"
#include "walg/polynomial.hpp"

namespace walg {

enum class GhostKind { b, c, btilde, ctilde, beta, gamma, betabar, gammabar };

std::string ghost_name(GhostKind k);
GhostKind ghost_from_name(const std::string& name);
bool is_anticommuting(GhostKind k);

/// Sign s in X_i(z) Y_j(w) ~ s delta_ij / ((z-w)(zb-wb)); nullopt when the
/// two kinds do not contract.
std::optional<int> propagator_sign(GhostKind left, GhostKind right);

struct PropagatorRule {
  GhostKind left;
  GhostKind right;
  int sign;
};
/// Every contracting ordered pair with its sign.
std::vector<PropagatorRule> propagator_table();

/// Name of the free summation index in bilinear currents.
inline const std::string kFreeIndex = "k";

/// dbar^{dbar} X_{k + shift}: the index is the free summation index plus a
/// shift that may depend on weights but not on the index itself.
struct GhostField {
  GhostKind kind = GhostKind::c;
  int dbar = 0;
  Polynomial shift;

  friend bool operator==(const GhostField&, const GhostField&) = default;
};

struct BilinearSummand {
  Polynomial coeff;  // may depend on the free index and on parameters
  GhostField first;
  GhostField second;
};

/// sum_{k >= 0} sum_i coeff_i(k) :first_i second_i:
struct BilinearCurrent {
  std::string name;
  std::vector<BilinearSummand> summands;
};

/// Result of a single contraction between two concrete fields.
struct Contraction {
  Rational coeff;    // coefficient of (z-w)^{-1} (zb-wb)^{-antihol_pole}
  int antihol_pole = 1;
};

/// X(z,zb) Y(w,wb) with concrete indices (constant shifts). Returns nullopt
/// when the pair does not contract or the indices differ.
std::optional<Contraction> contract_fields(const GhostField& x, const GhostField& y);

/// A normal-ordered bilinear at (w, wb) with the first field at index k and
/// the second at k + shift.
struct BilinearKey {
  int antihol_pole = 1;
  GhostKind first = GhostKind::c;
  int first_dbar = 0;
  GhostKind second = GhostKind::b;
  int second_dbar = 0;
  Polynomial shift;

  friend bool operator<(const BilinearKey& a, const BilinearKey& b);
  friend bool operator==(const BilinearKey&, const BilinearKey&) = default;
};

/// Singular part of A(z) B(w) from single contractions, before recognition.
/// Every term carries exactly one (z-w)^{-1}.
struct RawWickResult {
  std::map<BilinearKey, Polynomial> terms;
  /// Central terms (double contractions) are excluded; this records how many
  /// contraction pairs were skipped for that reason.
  std::size_t double_contractions_skipped = 0;
};

struct WickOptions {
  /// Highest Taylor order used when moving the surviving field from z to w.
  int antihol_order_max = 64;
};

RawWickResult wick_raw(const BilinearCurrent& a, const BilinearCurrent& b,
                       const WickOptions& opts = {});

/// How to read surviving bilinears as currents of a family: the current of
/// weight q has second-field shift q + offset and the given summands.
struct CurrentFamily {
  Family family = Family::w;
  Rational offset = -1;
  std::function<BilinearCurrent(const Rational& q)> make;
};

struct WickOpe {
  OpeExpansion expansion;
  std::vector<Diagnostic> diagnostics;  // unrecognized bilinear patterns
  RawWickResult raw;
};

/// Wick OPE of two currents with recognition of the surviving bilinears as
/// derivatives of currents from `family`. Coefficients must depend only on
/// the free index.
WickOpe wick_ope(const BilinearCurrent& a, const BilinearCurrent& b,
                 const CurrentFamily& family, const WickOptions& opts = {});

/// Exact square root of a rational; nullopt if it is not a perfect square.
std::optional<Rational> exact_sqrt(const Rational& r);

/// -sqrt(kappa) sum_k [(q+2) :dbar c_k b_{q-1+k}: + (k+1) :c_k dbar b_{q-1+k}:].
/// Throws DomainError when kappa is not the square of a rational.
BilinearCurrent make_w_current(const Rational& q, const Rational& kappa = 1);

/// -sqrt(kappa) sum_k [(q+k+a) :dbar c_k b_{q-2+k}: + (k+b) :c_k dbar b_{q-2+k}:].
BilinearCurrent make_shifted_w_current(const Rational& q, const Rational& kappa,
                                       const Rational& a, const Rational& b);

CurrentFamily w_family(const Rational& kappa = 1);
CurrentFamily shifted_w_family(const Rational& kappa, const Rational& a,
                               const Rational& b);

// ---------------------------------------------------------------------------
// Realization coefficients

enum class AlphaSeed {
  /// alpha_{1,0} = -(q+2), alpha_{0,1} = -(k+1), second index q-1+k.
  standard,
  /// alpha_{1,0} = -(q+k), alpha_{0,1} = -(k+1), second index q-2+k.
  shifted,
};

struct SolveAlphaOptions {
  int order_max = 2;               // highest total derivative degree in the ansatz
  AlphaSeed seed = AlphaSeed::standard;
  std::vector<int> target_p = {1};  // grades of the target template
  int q_degree = 2;                // ansatz degree in q
  int k_degree = 2;                // ansatz degree in the free index
};

struct MatchingEquation {
  int level = 0;          // antihol_pole + total derivative degree
  std::string group;      // bilinear shape of the equation
  std::string monomial;   // monomial in q1, q2, k
  Polynomial residual;    // lhs - rhs as a linear form in the unknowns
};

struct SolveAlphaReport {
  bool consistent = true;
  std::optional<MatchingEquation> first_failure;
  /// alpha_{a,b}(q, k) by "a,b"; unknown parameters set to their solution
  /// (free ones pinned to zero).
  std::map<std::string, Polynomial> alpha;
  std::vector<std::string> pinned_free;
  /// Levels matched and whether the substituted solution leaves a zero
  /// residual on each.
  std::map<int, bool> level_residual_zero;
  std::vector<MatchingEquation> equations;
};

SolveAlphaReport solve_alpha(const SolveAlphaOptions& opts);

// ---------------------------------------------------------------------------
// Fermionic structure constants

/// Target shape used when matching the fermionic OPE: the target label is
/// ignored and only the pole order, derivative order and family are kept.
struct GShape {
  int antihol_pole = 1;
  int dbar = 0;
  Family family = Family::wtilde;
  friend auto operator<=>(const GShape&, const GShape&) = default;
};

/// The known singular terms of G^{q1-}(z) G^{q2+}(w) from the realization:
///   2k W~/(zb-wb) - 2k(q1+q2-2) W~~/(zb-wb)^2 - 2k(q1-1) dbar W~~/(zb-wb),
/// all with one (z-w)^{-1}, as an expansion with labels q1+q2-1.
OpeExpansion gg_real_target(HalfInt q1, HalfInt q2, const Rational& kappa);
/// Same, with q1, q2 the polynomial variables "q1", "q2" and kappa = 1.
std::map<GShape, Polynomial> gg_real_target_symbolic();

struct BConstantsReport {
  bool consistent = true;
  std::optional<std::string> first_failure;
  /// "B[p,x]" / "Bt[p,x]" -> value as a rational function of q1, q2.
  std::map<std::string, RationalFunction> values;
  std::vector<std::string> free_unknowns;
};

/// Symbolic route: template and target over Q(q1, q2), kappa = 1, grades
/// p <= p_max.
BConstantsReport match_B_constants_symbolic(int p_max = 1);

/// Concrete route for fixed weights: build_g_ope with unknown B entries,
/// canonicalized and matched against `target` by GShape over the grades
/// p <= p_max.
BConstantsReport match_B_constants(const OpeExpansion& target, HalfInt q1, HalfInt q2,
                                   const CouplingRegistry& reg,
                                   const SuperCoupling& sc = {}, int p_max = 1);

std::string to_string(const BilinearCurrent& c);
std::string to_string(const BilinearKey& k);

}  // namespace walg

#endif  // WALG_FREEFIELD_HPP
