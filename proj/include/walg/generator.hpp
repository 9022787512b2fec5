#ifndef WALG_GENERATOR_HPP
#define WALG_GENERATOR_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walg/arith.hpp"

namespace walg {

/// Current families. `h` is the soft current H^{k,s} (its label stores k in
/// the q slot); `v` and `ghat` are the rescaled topological generators.
enum class Family { h, w, wtilde, wtilde2, gplus, gminus, vhat, v, ghat };

/// Machine name used in JSON ("wtilde", "gminus", ...).
std::string family_name(Family f);
/// Inverse of family_name. Throws DomainError on unknown names.
Family family_from_name(std::string_view name);
bool is_fermionic(Family f);

struct GeneratorLabel {
  Family family = Family::wtilde;
  HalfInt q;
  std::optional<HalfInt> s;

  friend auto operator<=>(const GeneratorLabel&, const GeneratorLabel&) = default;
  friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
};

struct GeneratorMode {
  GeneratorLabel label;
  HalfInt m;

  friend auto operator<=>(const GeneratorMode&, const GeneratorMode&) = default;
  friend bool operator==(const GeneratorMode&, const GeneratorMode&) = default;
};

GeneratorLabel wtilde_label(HalfInt q, std::optional<HalfInt> s = std::nullopt);
GeneratorMode wtilde_mode(HalfInt q, HalfInt s, HalfInt m);
/// Soft current H^{k,s}_m.
GeneratorMode soft_mode(HalfInt k, HalfInt s, HalfInt m);

/// Checks the user-facing label invariants; throws DomainError with the
/// offending field.
void validate_label(const GeneratorLabel& l);

/// Wedge test |m| <= q-1 with q-1-|m| integral. For the soft family the
/// range is (k-s)/2 <= m <= (s-k)/2 in integer steps.
bool in_wedge(const GeneratorMode& mode);
/// All wedge modes of a bosonic-type label, ascending.
std::vector<HalfInt> wedge_modes(HalfInt q);
/// All modes of the soft current H^{k,s}, ascending.
std::vector<HalfInt> soft_modes(HalfInt k, HalfInt s);

/// Weights {1, 3/2, ..., q_max}.
std::vector<HalfInt> weight_grid(HalfInt q_min, HalfInt q_max);

std::string to_string(const GeneratorLabel& l);
std::string to_string(const GeneratorMode& m);

}  // namespace walg

#endif  // WALG_GENERATOR_HPP
