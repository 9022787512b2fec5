#ifndef WALG_LINSOLVE_HPP
#define WALG_LINSOLVE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "walg/arith.hpp"
#include "walg/polynomial.hpp"

namespace walg {

/// One equation  sum_u coeffs[u] * u = rhs  over a field F.
template <class F>
struct LinearEquation {
  std::map<std::string, F> coeffs;
  F rhs;
  std::string label;  // where the equation came from, for reports
};

/// Affine solution space of a linear system.
template <class F>
struct LinearSolution {
  bool consistent = true;
  /// Index (in input order) of the first equation that contradicted the
  /// equations before it.
  std::optional<std::size_t> first_inconsistent;
  /// Value of every determined or pivot unknown with all free unknowns at 0.
  std::map<std::string, F> particular;
  /// Unknowns left free by the system.
  std::vector<std::string> free_unknowns;
  /// pivot unknown -> (free unknown -> coefficient) in
  ///   pivot = particular[pivot] + sum_f dependence[pivot][f] * f.
  std::map<std::string, std::map<std::string, F>> dependence;

  bool unique() const { return consistent && free_unknowns.empty(); }
};

/// Incremental Gauss-Jordan elimination. Unknowns that never occur are not
/// reported. Processing stops at the first inconsistent equation.
template <class F>
LinearSolution<F> solve_linear(const std::vector<LinearEquation<F>>& eqs,
                               const std::vector<std::string>& unknowns = {});

extern template LinearSolution<Rational> solve_linear(
    const std::vector<LinearEquation<Rational>>&, const std::vector<std::string>&);
extern template LinearSolution<RationalFunction> solve_linear(
    const std::vector<LinearEquation<RationalFunction>>&, const std::vector<std::string>&);

/// Splits a polynomial that is affine in the listed unknowns into
/// coefficient polynomials: result[""] is the part free of unknowns.
std::map<std::string, Polynomial> split_affine(const Polynomial& p,
                                               const std::vector<std::string>& unknowns);

}  // namespace walg

#endif  // WALG_LINSOLVE_HPP
