#ifndef WALG_COMBINATION_HPP
#define WALG_COMBINATION_HPP

#include <map>
#include <string>
#include <vector>

#include "walg/arith.hpp"
#include "walg/generator.hpp"
#include "walg/polynomial.hpp"

namespace walg {

/// A term the engine computed but did not keep, together with the reason.
struct Diagnostic {
  std::string code;    // e.g. "target-outside-wedge"
  std::string detail;  // human-readable description
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Finite linear combination of generator modes. Terms are merged by mode
/// and zero coefficients are dropped; iteration order is the mode order.
template <class C>
class BasicModeCombination {
 public:
  void add(const GeneratorMode& mode, const C& coeff) {
    if (is_zero(coeff)) return;
    auto [it, inserted] = terms_.emplace(mode, coeff);
    if (!inserted) {
      it->second = it->second + coeff;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  void add(const BasicModeCombination& other, const C& scale) {
    for (const auto& [mode, c] : other.terms_) add(mode, c * scale);
    diagnostics_.insert(diagnostics_.end(), other.diagnostics_.begin(),
                        other.diagnostics_.end());
  }

  BasicModeCombination& operator+=(const BasicModeCombination& other) {
    add(other, C(1));
    return *this;
  }

  void add_diagnostic(Diagnostic d) { diagnostics_.push_back(std::move(d)); }

  C coefficient(const GeneratorMode& mode) const {
    auto it = terms_.find(mode);
    return it == terms_.end() ? C(0) : it->second;
  }

  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::map<GeneratorMode, C>& terms() const noexcept { return terms_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

  /// Equality of the terms; diagnostics are not compared.
  friend bool operator==(const BasicModeCombination& a, const BasicModeCombination& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::map<GeneratorMode, C> terms_;
  std::vector<Diagnostic> diagnostics_;
};

using ModeCombination = BasicModeCombination<Rational>;
using SymbolicModeCombination = BasicModeCombination<Polynomial>;

std::string to_string(const ModeCombination& c);
std::string to_string(const SymbolicModeCombination& c);

}  // namespace walg

#endif  // WALG_COMBINATION_HPP
