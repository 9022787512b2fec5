#ifndef WALG_SPEC_PARSER_HPP
#define WALG_SPEC_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>

#include "walg/generator.hpp"

namespace walg {

/// Text form of a generator or one of its modes:
///   Wt[q=2,s=2,m=1]  Wtt[q=3,m=0]  G-[q=3/2,r=1/2]  G+[q=3/2,r=-1/2]
///   Vhat[q=2,m=0]  H[k=1,s=2,m=0]  w[q=3,m=1]  v[q=2,m=0]  Ghat[q=2,r=1/2]
/// Fields may appear in any order; the mode field is optional. Values are
/// integers or half-integers written as "3/2".
struct GeneratorSpec {
  GeneratorLabel label;
  std::optional<HalfInt> mode;

  /// The mode; throws DomainError when the spec names only a generator.
  GeneratorMode as_mode() const;
  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Throws ParseError with the 1-based column of the problem.
GeneratorSpec parse_generator(std::string_view text);

/// Canonical form: family token, then q (k for H), s, and the mode.
std::string print_generator(const GeneratorSpec& spec);

/// "Wt", "Wtt", "G+", ... for each family.
std::string family_token(Family f);

}  // namespace walg

#endif  // WALG_SPEC_PARSER_HPP
