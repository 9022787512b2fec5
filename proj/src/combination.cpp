#include "walg/combination.hpp"

#include <sstream>

namespace walg {

namespace {

template <class C>
std::string render(const BasicModeCombination<C>& c, bool parenthesize) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mode, coeff] : c.terms()) {
    if (!first) os << " + ";
    first = false;
    if (parenthesize) {
      os << "(" << coeff << ")*";
    } else {
      os << coeff << "*";
    }
    os << to_string(mode);
  }
  return os.str();
}

}  // namespace

std::string to_string(const ModeCombination& c) { return render(c, false); }
std::string to_string(const SymbolicModeCombination& c) { return render(c, true); }

}  // namespace walg
