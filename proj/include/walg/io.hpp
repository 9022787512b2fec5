#ifndef WALG_IO_HPP
#define WALG_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "walg/combination.hpp"
#include "walg/coupling.hpp"
#include "walg/freefield.hpp"
#include "walg/ope.hpp"
#include "walg/structure.hpp"
#include "walg/supertwist.hpp"
#include "walg/sweep.hpp"

namespace walg {

using Json = nlohmann::ordered_json;

/// Exact rationals travel as strings ("-3/2"); JSON integers are accepted on
/// input, floats never. Errors carry the JSON pointer `where`.
Rational rational_from_json(const Json& j, const std::string& where);
HalfInt halfint_from_json(const Json& j, const std::string& where);

Json to_json(const Rational& r);
Json to_json(const GeneratorLabel& l);
Json to_json(const GeneratorMode& m);
Json to_json(const Diagnostic& d);
Json to_json(const ModeCombination& c);
Json to_json(const SymbolicModeCombination& c);
Json to_json(const OpeKey& k);
Json to_json(const OpeExpansion& e);
Json to_json(const SymbolicOpeExpansion& e);
Json to_json(const ConstraintViolation& v);
Json to_json(const CouplingRegistry& r);
Json to_json(const WickOpe& w);
Json to_json(const SolveAlphaReport& r);
Json to_json(const BConstantsReport& r);
Json to_json(const VhatExpression& v);
Json to_json(const RescaleReport& r);
Json to_json(const SweepResult& r);
Json to_json(const std::vector<VanishingEntry>& v);
Json to_json(const std::vector<NTableRow>& rows);

/// Registry document:
///   {"default": "1" | null, "entries": [{"s1": "2", "s2": "2", "s3": "-2", "kappa": "1"}]}
/// Duplicate keys are rejected; "kappa": "0" is accepted.
CouplingRegistry registry_from_json(const Json& j);
CouplingRegistry parse_registry(const std::string& text);
CouplingRegistry load_registry(const std::string& path);

/// LaTeX with W~ written as \widetilde{W}.
std::string latex(const Rational& r);
std::string latex(const Polynomial& p);
std::string latex(const GeneratorMode& m);
std::string latex(const ModeCombination& c);
std::string latex(const SymbolicModeCombination& c);
std::string latex(const OpeExpansion& e);
std::string latex(const SymbolicOpeExpansion& e);

}  // namespace walg

#endif  // WALG_IO_HPP
