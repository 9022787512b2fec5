// Acceptance checks. Every comparison is exact rational equality; the
// tolerance is therefore zero for all ten criteria.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "walg/coupling.hpp"
#include "walg/freefield.hpp"
#include "walg/io.hpp"
#include "walg/ope.hpp"
#include "walg/structure.hpp"
#include "walg/supertwist.hpp"
#include "walg/sweep.hpp"

using namespace walg;

namespace {

constexpr int kTolerance = 0;  // exact equality everywhere

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

HalfInt h(int doubled) { return HalfInt::from_doubled(doubled); }

Rational w1inf(HalfInt q1, HalfInt q2, HalfInt m, HalfInt n) {
  const Rational one(1);
  return m.to_rational() * (q2.to_rational() - one) - n.to_rational() * (q1.to_rational() - one);
}

std::string sweep_summary(const SweepResult& r) {
  std::ostringstream os;
  os << r.checked << " cases, " << r.failures.size() << " failures";
  if (!r.failures.empty()) os << "; first: " << r.failures.front();
  return os.str();
}

CouplingRegistry shipped_registry(const char* name) {
  return load_registry(std::string(WALG_REGISTRY_DIR) + "/" + name);
}

Verdict criterion1() {
  Verdict v;
  const auto r = parallel::representation_sweep(SweepRange{});
  v.require(r.ok(), "representation sweep");
  v.note(sweep_summary(r));
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto r = parallel::closed_form_sweep(SweepRange{});
  v.require(r.ok(), "closed forms at p = 0, 1");
  v.note("closed forms: " + sweep_summary(r));

  const auto unit = CouplingRegistry::unit();
  std::size_t checked = 0, bad = 0;
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(5))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(5))) {
      for (auto m : wedge_modes(q1)) {
        for (auto n : wedge_modes(q2)) {
          ++checked;
          const auto b = wtilde_bracket(wtilde_mode(q1, HalfInt(2), m),
                                        wtilde_mode(q2, HalfInt(2), n), unit, 1);
          ModeCombination want;
          const auto target = wtilde_mode(q1 + q2 - HalfInt(2), HalfInt(2), m + n);
          if (target.label.q >= HalfInt(1) && in_wedge(target)) {
            want.add(target, w1inf(q1, q2, m, n));
          }
          if (!(b == want)) ++bad;
        }
      }
    }
  }
  v.require(bad == 0, std::to_string(bad) + " brackets differ from w_{1+infinity}");
  v.note("truncated brackets: " + std::to_string(checked) + " cases");
  return v;
}

Verdict criterion3() {
  Verdict v;
  const auto r = parallel::roundtrip_sweep(HalfInt(4), HalfInt(2), CouplingRegistry::unit());
  v.require(r.ok(), "OPE round trip");
  v.note(sweep_summary(r));
  return v;
}

/// Coefficient of wb^{A-B+1} in -Res_{t=0} (wb+t)^A t^{-B}, from the series
/// of (1+t/wb)^A built term by term.
Rational minus_residue(const Rational& A, int B) {
  if (B <= 0) return Rational(0);
  Rational c(1);
  for (int j = 0; j < B - 1; ++j) c = c * (A - Rational(j)) / Rational(j + 1);
  return -c;
}

Verdict criterion4() {
  Verdict v;
  int checked = 0;
  for (int A2 = -16; A2 <= 16; ++A2) {
    const Rational A(A2, 2);
    for (int B = -2; B <= 6; ++B) {
      ++checked;
      const Rational got = zbar_contour(ContourRule::formal, A, B);
      const Rational want = minus_residue(A, B);
      v.require(got == want, "A=" + A.to_string() + " B=" + std::to_string(B) + ": " +
                                 got.to_string() + " vs " + want.to_string());
    }
  }
  // The series coefficient as a polynomial in A, evaluated against the rule.
  for (int B = 1; B <= 6; ++B) {
    Polynomial series(1);
    const Polynomial a = Polynomial::variable("A");
    for (int j = 0; j < B - 1; ++j) {
      series = series * (a - Polynomial(j)) * Polynomial(Rational(1, j + 1));
    }
    series = -series;
    for (int A = -8; A <= 8; ++A) {
      const Rational rule = zbar_contour(ContourRule::formal, Rational(A), B);
      v.require(series.evaluate({{"A", Rational(A)}}) == rule, "symbolic B=" + std::to_string(B));
    }
  }
  v.note(std::to_string(checked) + " (A, B) pairs with A in [-8, 8] step 1/2, B in [-2, 6]");
  return v;
}

Verdict criterion5() {
  Verdict v;
  const auto r = parallel::parity_sweep(SweepRange{});
  v.require(r.ok(), "parity sweep");
  v.note(sweep_summary(r));
  return v;
}

Verdict criterion6() {
  Verdict v;
  const auto rep = vanishing_p_report(HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(2));
  std::string seen;
  for (const auto& e : rep) {
    const bool want = e.p >= 3;
    v.require(e.vanishes == want && e.n.is_zero() == want,
              "p=" + std::to_string(e.p) + " vanishing=" + (e.vanishes ? "yes" : "no"));
    seen += " p" + std::to_string(e.p) + (e.vanishes ? ":0" : ":nonzero");
  }
  v.require(rep.size() == 5, "expected grades 1..5");
  v.note("grades" + seen);
  return v;
}

Verdict criterion7() {
  Verdict v;
  const auto fam = w_family(Rational(1));
  for (int q1 = 2; q1 <= 5; ++q1) {
    for (int q2 = 2; q2 <= 5; ++q2) {
      const std::string tag = "(" + std::to_string(q1) + "," + std::to_string(q2) + ")";
      const auto r = wick_ope(make_w_current(Rational(q1)), make_w_current(Rational(q2)), fam);
      v.require(r.diagnostics.empty(), tag + ": " + std::to_string(r.diagnostics.size()) +
                                           " unrecognized bilinear groups");
      int max_pole = 0;
      for (const auto& [key, c] : r.raw.terms) max_pole = std::max(max_pole, key.antihol_pole);
      v.require(max_pole <= 2, tag + ": antiholomorphic pole of order " + std::to_string(max_pole));
      const GeneratorLabel target{Family::w, HalfInt(q1 + q2 - 2), std::nullopt};
      OpeExpansion want;
      want.add(OpeKey{1, 2, 0, target}, Rational(-(q1 + q2 - 2)));
      want.add(OpeKey{1, 1, 1, target}, Rational(-(q1 - 2)));
      v.require(r.expansion == want, tag + ": got " + to_string(r.expansion));
    }
  }
  if (!v.pass) {
    const auto sf = shifted_w_family(Rational(1), Rational(0), Rational(1));
    const auto r = wick_ope(sf.make(Rational(2)), sf.make(Rational(3)), sf);
    v.notes.insert(v.notes.begin(),
                   "for comparison, the q-2 shifted current at (2,3) closes: " +
                       to_string(r.expansion));
  }
  return v;
}

Verdict criterion8() {
  Verdict v;
  const auto rep = match_B_constants_symbolic(1);
  v.require(rep.consistent, "matching system inconsistent");
  const Polynomial q1 = Polynomial::variable("q1"), q2 = Polynomial::variable("q2");
  const std::map<std::string, RationalFunction> want{
      {"B[0,0]", RationalFunction(4)},
      {"B[1,0]", RationalFunction(0)},
      {"B[1,1]", RationalFunction(0)},
      {"Bt[0,0]", RationalFunction(0)},
      {"Bt[1,0]", RationalFunction(Polynomial(-2) * (Polynomial(2) * q1 + q2 - Polynomial(3)),
                                   q2 - Polynomial(1))},
      {"Bt[1,1]", RationalFunction(-2)},
  };
  for (const auto& [name, value] : want) {
    auto it = rep.values.find(name);
    if (it == rep.values.end()) {
      v.require(false, name + " undetermined");
      continue;
    }
    v.require(it->second == value, name + " = " + it->second.to_string() + ", expected " +
                                       value.to_string());
  }
  return v;
}

Verdict criterion9() {
  Verdict v;
  const auto ones = kappa_conditions(shipped_registry("ones.json"));
  std::string which;
  for (const auto& c : ones) which += " " + std::to_string(c.index);
  v.require(ones.size() == 1, "all-ones registry violates " + std::to_string(ones.size()) +
                                  " constraints (" + which.substr(which.empty() ? 0 : 1) + ")");
  const auto compliant = kappa_conditions(shipped_registry("compliant.json"));
  v.require(compliant.empty(), "compliant registry violates a constraint");
  const auto r = parallel::jacobi_sweep(JacobiSweepOptions{}, CouplingRegistry::unit());
  v.require(r.ok(), "Jacobi sweep");
  v.note("Jacobi: " + sweep_summary(r));
  return v;
}

Verdict criterion10() {
  Verdict v;
  const auto q = brst().mode();
  v.require(q.family() == Family::gplus && q.q() == h(3) && q.r() == h(-1), "BRST charge");
  v.require(brst_contour_selection(h(9)) == std::vector<HalfInt>{h(-1)}, "BRST contour selection");

  const auto unit = CouplingRegistry::unit();
  std::size_t variations = 0;
  for (auto qq : weight_grid(h(3), HalfInt(4))) {
    const auto e = vhat_expression(qq, {}, {}, unit);
    v.require(e.off_diagonal_remnants == 0,
              "V-hat at q=" + qq.to_string() + " has x != p remnants");
    for (const auto& [p, x] : e.origins) v.require(p == x, "off-diagonal origin");
    v.require(e.generator == vhat_closed_form(qq, {}, {}, unit),
              "V-hat at q=" + qq.to_string() + " differs from the closed form");
    for (auto r : wedge_modes(qq)) {
      ++variations;
      v.require(brst_variation_of_vhat(FermionicMode(Family::gminus, qq, r)).empty(),
                "[Q, V] at q=" + qq.to_string());
    }
  }

  std::size_t reduced = 0, divergent = 0;
  const GhatTable ghat;
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(4))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(4))) {
      for (auto m : wedge_modes(q1)) {
        for (auto n : wedge_modes(q2)) {
          const Rational c = w1inf(q1, q2, m, n);
          const HalfInt q3 = q1 + q2 - HalfInt(2);
          for (auto which : {RescaledBracket::vv, RescaledBracket::vg}) {
            ++reduced;
            const auto rep = rescale_limit(which, q1, m, q2, n, ghat);
            if (rep.divergent) ++divergent;
            SymbolicModeCombination want;
            const bool vv = which == RescaledBracket::vv;
            want.add(GeneratorMode{GeneratorLabel{vv ? Family::v : Family::ghat, q3, std::nullopt},
                                   vv ? m + n : m + n + h(1)},
                     Polynomial(c));
            v.require(rep.reduced == want, std::string(vv ? "[v,v]" : "[v,G]") + " at q1=" +
                                               q1.to_string() + " q2=" + q2.to_string() +
                                               " m=" + m.to_string() + " n=" + n.to_string());
          }
        }
      }
    }
  }
  v.note(std::to_string(variations) + " BRST variations, " + std::to_string(reduced) +
         " reduced brackets; " + std::to_string(divergent) +
         " carry an unknown p=0 coefficient at lambda^-1");
  return v;
}

const std::vector<std::pair<std::string, std::function<Verdict()>>> kCriteria{
    {"representation equality", criterion1},
    {"closed forms at p = 0 and p = 1", criterion2},
    {"OPE and bracket round trip", criterion3},
    {"formal residue rule", criterion4},
    {"parity property", criterion5},
    {"vanishing pattern at (2,2,2,2)", criterion6},
    {"Wick realization", criterion7},
    {"B-constant recovery", criterion8},
    {"kappa constraints and Jacobi", criterion9},
    {"BRST and topological sector", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Acceptance checks");
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  app.add_flag("-v,--verbose", verbose, "Print every failure detail");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    Verdict v;
    try {
      v = kCriteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.notes.push_back(std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failed;
    std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << " ("
              << kCriteria[i].first << ", tolerance " << kTolerance << ")";
    const std::size_t shown = verbose ? v.notes.size() : std::min<std::size_t>(v.notes.size(), 3);
    for (std::size_t k = 0; k < shown; ++k) std::cout << "\n    " << v.notes[k];
    if (shown < v.notes.size()) std::cout << "\n    ... " << v.notes.size() - shown << " more";
    std::cout << std::endl;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
