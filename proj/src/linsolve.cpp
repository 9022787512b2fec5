#include "walg/linsolve.hpp"

#include <algorithm>
#include <set>

#include "walg/error.hpp"

namespace walg {

namespace {

template <class F>
struct Row {
  std::map<std::string, F> coeffs;  // nonzero entries only
  F rhs;
};

template <class F>
void axpy(Row<F>& target, const Row<F>& source, const F& factor) {
  // target -= factor * source
  for (const auto& [u, c] : source.coeffs) {
    auto it = target.coeffs.find(u);
    if (it == target.coeffs.end()) {
      target.coeffs.emplace(u, F(0) - factor * c);
    } else {
      it->second = it->second - factor * c;
      if (is_zero(it->second)) target.coeffs.erase(it);
    }
  }
  target.rhs = target.rhs - factor * source.rhs;
}

}  // namespace

template <class F>
LinearSolution<F> solve_linear(const std::vector<LinearEquation<F>>& eqs,
                               const std::vector<std::string>& unknowns) {
  LinearSolution<F> out;
  std::map<std::string, Row<F>> pivots;  // pivot unknown -> row with coeff 1
  std::set<std::string> seen(unknowns.begin(), unknowns.end());

  for (std::size_t i = 0; i < eqs.size(); ++i) {
    Row<F> row;
    for (const auto& [u, c] : eqs[i].coeffs) {
      seen.insert(u);
      if (!is_zero(c)) row.coeffs.emplace(u, c);
    }
    row.rhs = eqs[i].rhs;
    for (const auto& [u, prow] : pivots) {
      auto it = row.coeffs.find(u);
      if (it == row.coeffs.end()) continue;
      const F factor = it->second;
      axpy(row, prow, factor);
    }
    if (row.coeffs.empty()) {
      if (!is_zero(row.rhs)) {
        out.consistent = false;
        out.first_inconsistent = i;
        break;
      }
      continue;
    }
    const std::string pivot = row.coeffs.begin()->first;
    const F inv = F(1) / row.coeffs.begin()->second;
    for (auto& [u, c] : row.coeffs) c = c * inv;
    row.rhs = row.rhs * inv;
    for (auto& [u, prow] : pivots) {
      auto it = prow.coeffs.find(pivot);
      if (it == prow.coeffs.end()) continue;
      const F factor = it->second;
      axpy(prow, row, factor);
    }
    pivots.emplace(pivot, std::move(row));
  }

  for (const auto& u : seen) {
    if (!pivots.count(u)) out.free_unknowns.push_back(u);
  }
  for (const auto& [u, prow] : pivots) {
    out.particular.emplace(u, prow.rhs);
    std::map<std::string, F> dep;
    for (const auto& [v, c] : prow.coeffs) {
      if (v != u) dep.emplace(v, F(0) - c);
    }
    out.dependence.emplace(u, std::move(dep));
  }
  for (const auto& u : out.free_unknowns) out.particular.emplace(u, F(0));
  return out;
}

template LinearSolution<Rational> solve_linear(const std::vector<LinearEquation<Rational>>&,
                                               const std::vector<std::string>&);
template LinearSolution<RationalFunction> solve_linear(
    const std::vector<LinearEquation<RationalFunction>>&, const std::vector<std::string>&);

std::map<std::string, Polynomial> split_affine(const Polynomial& p,
                                               const std::vector<std::string>& unknowns) {
  const std::set<std::string> names(unknowns.begin(), unknowns.end());
  std::map<std::string, Polynomial> out;
  for (const auto& [m, c] : p.terms()) {
    std::string which;
    Monomial rest;
    for (const auto& [v, e] : m) {
      if (names.count(v)) {
        if (!which.empty() || e != 1) {
          throw DomainError("expression is not affine in the unknowns: " + p.to_string());
        }
        which = v;
      } else {
        rest.emplace(v, e);
      }
    }
    out[which] += Polynomial::monomial(rest, c);
  }
  return out;
}

}  // namespace walg
