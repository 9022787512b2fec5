#ifndef WALG_COUPLING_HPP
#define WALG_COUPLING_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "walg/arith.hpp"

namespace walg {

/// The literal subscript triple of a coupling kappa_{s1,s2,s3}.
struct CouplingKey {
  HalfInt s1;
  HalfInt s2;
  HalfInt s3;

  friend auto operator<=>(const CouplingKey&, const CouplingKey&) = default;
  friend bool operator==(const CouplingKey&, const CouplingKey&) = default;
};

/// Key for the bracket term of grade p: (s1, s2, -(s1+s2-p-1)).
CouplingKey bracket_key(HalfInt s1, HalfInt s2, int p);
std::string to_string(const CouplingKey& k);

class CouplingRegistry {
 public:
  CouplingRegistry() = default;
  explicit CouplingRegistry(std::optional<Rational> fallback)
      : default_(std::move(fallback)) {}

  /// Registry with every coupling equal to 1 through the default.
  static CouplingRegistry unit() { return CouplingRegistry(Rational(1)); }

  void set(const CouplingKey& k, const Rational& value) { entries_[k] = value; }
  void set_default(std::optional<Rational> d) { default_ = std::move(d); }

  /// Explicit entry or the default. Throws DomainError naming the key.
  Rational lookup(const CouplingKey& k) const;
  /// Explicit entry only.
  std::optional<Rational> explicit_value(const CouplingKey& k) const;

  const std::map<CouplingKey, Rational>& entries() const noexcept { return entries_; }
  const std::optional<Rational>& fallback() const noexcept { return default_; }

 private:
  std::map<CouplingKey, Rational> entries_;
  std::optional<Rational> default_;
};

enum class ViolationKind { violated, division_by_zero };

struct ConstraintViolation {
  int index = 0;  // 1-based position in the list of four constraints
  ViolationKind kind = ViolationKind::violated;
  std::string constraint;
  Rational lhs;
  Rational rhs;
};

/// Human-readable form of constraint i (1..4).
std::string kappa_constraint_text(int index);

/// Evaluates the four Jacobi constraints on explicit registry entries.
/// Throws DomainError when one of the eight keys is absent.
std::vector<ConstraintViolation> kappa_conditions(const CouplingRegistry& reg);

/// The eight keys read by kappa_conditions.
std::vector<CouplingKey> kappa_constraint_keys();

}  // namespace walg

#endif  // WALG_COUPLING_HPP
