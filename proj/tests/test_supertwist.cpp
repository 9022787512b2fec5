#include "doctest.h"
#include "walg/error.hpp"
#include "walg/ope.hpp"
#include "walg/supertwist.hpp"

using namespace walg;

namespace {
HalfInt h(int doubled) { return HalfInt::from_doubled(doubled); }
const CouplingRegistry kUnit = CouplingRegistry::unit();
}  // namespace

TEST_CASE("BRST charge") {
  const auto q = brst();
  CHECK(q.mode().family() == Family::gplus);
  CHECK(q.mode().q() == h(3));
  CHECK(q.mode().r() == h(-1));
  CHECK_THROWS_AS(BrstOperator(FermionicMode(Family::gplus, h(3), h(1))), DomainError);
  CHECK_THROWS_AS(BrstOperator(FermionicMode(Family::gminus, h(3), h(-1))), DomainError);
  CHECK(brst_contour_selection(h(7)) == std::vector<HalfInt>{h(-1)});
}

TEST_CASE("fermionic modes") {
  CHECK_THROWS_AS(FermionicMode(Family::wtilde, h(3), h(1)), DomainError);
  CHECK_THROWS_AS(FermionicMode(Family::gplus, HalfInt(1), HalfInt(0)), DomainError);
  CHECK_THROWS_AS(FermionicMode(Family::gplus, h(3), h(3)), DomainError);
  CHECK_NOTHROW(FermionicMode(Family::gminus, h(5), h(3)));
  const FermionicMode g(Family::gplus, h(3), h(1));
  CHECK(g_pairing_zero(g, g).empty());
  CHECK_THROWS_AS(g_pairing_zero(g, FermionicMode(Family::gminus, h(3), h(1))), DomainError);
}

TEST_CASE("G- G+ anticommutator with the derived constants") {
  const FermionicMode a(Family::gminus, h(5), h(1)), b(Family::gplus, h(5), h(-1));
  const auto r = gg_anticommutator(a, b, kUnit, derived_b(), derived_btilde());
  const GeneratorMode w4{GeneratorLabel{Family::wtilde, HalfInt(4), std::nullopt}, HalfInt(0)};
  const GeneratorMode ww3{GeneratorLabel{Family::wtilde2, HalfInt(3), std::nullopt}, HalfInt(0)};
  CHECK(r.coefficient(w4) == Polynomial(-2));
  CHECK(r.coefficient(ww3) == Polynomial(3));
  // grades 2 and 3 stay symbolic: their targets have lower weight
  for (const auto& [mode, c] : r.terms()) {
    if (mode != w4 && mode != ww3) CHECK(mode.label.q <= HalfInt(2));
  }
}

TEST_CASE("G- G+ anticommutator is linear in the constants") {
  const FermionicMode a(Family::gminus, h(5), h(1)), b(Family::gplus, HalfInt(2), HalfInt(0));
  BTable bt, btt;
  std::map<std::string, Rational> values;
  for (int p = 0; p <= 3; ++p) {
    for (int x = 0; x <= p; ++x) {
      bt[{p, x}] = Rational(p + 2 * x + 1, 3);
      btt[{p, x}] = Rational(x - p - 2);
      values[b_symbol(p, x, false)] = bt[{p, x}];
      values[b_symbol(p, x, true)] = btt[{p, x}];
    }
  }
  const auto sym = gg_anticommutator(a, b, kUnit, {}, {});
  const auto num = gg_anticommutator(a, b, kUnit, bt, btt);
  SymbolicModeCombination evaluated;
  for (const auto& [mode, c] : sym.terms()) evaluated.add(mode, Polynomial(c.evaluate(values)));
  CHECK(evaluated == num);
  for (auto& [k, v] : bt) v *= Rational(3);
  for (auto& [k, v] : btt) v *= Rational(3);
  SymbolicModeCombination tripled;
  tripled.add(num, Polynomial(3));
  CHECK(gg_anticommutator(a, b, kUnit, bt, btt) == tripled);
}

TEST_CASE("V-hat keeps only the diagonal template terms") {
  for (auto q : weight_grid(h(3), HalfInt(4))) {
    const auto v = vhat_expression(q, {}, {}, kUnit);
    CHECK(v.off_diagonal_remnants == 0);
    for (const auto& [p, x] : v.origins) CHECK(p == x);
    CHECK(v.generator == vhat_closed_form(q, {}, {}, kUnit));
  }
}

TEST_CASE("V-hat with the derived constants") {
  for (auto q : weight_grid(h(3), HalfInt(4))) {
    const auto v = vhat_expression(q, derived_b(), derived_btilde(), kUnit);
    SymbolicOpeExpansion want;
    want.add(OpeKey{0, 0, 0, GeneratorLabel{Family::wtilde, q + h(1), std::nullopt}},
             Polynomial(2));
    if (q - h(1) >= HalfInt(1)) {
      want.add(OpeKey{0, 0, 1, GeneratorLabel{Family::wtilde2, q - h(1), std::nullopt}},
               Polynomial(-1));
    }
    CHECK(v.generator == want);
  }
}

TEST_CASE("V-hat bracket") {
  const GhatTable none;
  SUBCASE("grade 1 at weight 2") {
    for (auto m : wedge_modes(HalfInt(2))) {
      for (auto n : wedge_modes(HalfInt(2))) {
        const auto b = vhat_bracket(HalfInt(2), m, HalfInt(2), n, none, 1);
        const GeneratorMode target{GeneratorLabel{Family::vhat, HalfInt(2), std::nullopt}, m + n};
        if (!in_wedge(target)) continue;
        CHECK(b.coefficient(target) == Polynomial(m.to_rational() - n.to_rational()));
      }
    }
  }
  CHECK(ghat_p1(HalfInt(2), HalfInt(2), HalfInt(1), HalfInt(-1)) == Rational(2));
  {
    // equal modes: the grade 1 coefficient m(q2-1) - n(q1-1) vanishes
    const auto b = vhat_bracket(HalfInt(3), HalfInt(0), HalfInt(3), HalfInt(0), none, 1);
    const GeneratorMode t{GeneratorLabel{Family::vhat, HalfInt(4), std::nullopt}, HalfInt(0)};
    CHECK(b.coefficient(t).is_zero());
    CHECK(b.size() == 1);
  }
  SUBCASE("explicit entries replace symbols") {
    GhatTable g;
    g.set(HalfInt(3), HalfInt(3), HalfInt(0), HalfInt(0), 0, Rational(5));
    CHECK(g.lookup(HalfInt(3), HalfInt(3), HalfInt(0), HalfInt(0), 0) ==
          std::optional<Rational>(Rational(5)));
    CHECK(g.lookup(HalfInt(3), HalfInt(3), HalfInt(1), HalfInt(0), 0) == std::nullopt);
    CHECK(g.lookup(HalfInt(3), HalfInt(3), HalfInt(1), HalfInt(0), 1) ==
          std::optional<Rational>(Rational(2)));
  }
}

TEST_CASE("BRST variation of V-hat vanishes") {
  for (auto q : weight_grid(h(3), HalfInt(4))) {
    for (auto r : wedge_modes(q)) {
      CHECK(brst_variation_of_vhat(FermionicMode(Family::gminus, q, r)).empty());
    }
  }
  CHECK_THROWS_AS(brst_variation_of_vhat(FermionicMode(Family::gplus, h(3), h(1))), DomainError);
}

TEST_CASE("rescaling limit") {
  const GhatTable none;
  for (auto q1 : weight_grid(h(3), HalfInt(4))) {
    for (auto q2 : weight_grid(h(3), HalfInt(4))) {
      for (auto m : wedge_modes(q1)) {
        for (auto n : wedge_modes(q2)) {
          const auto vv = rescale_limit(RescaledBracket::vv, q1, m, q2, n, none);
          for (const auto& t : vv.terms) {
            CHECK(t.lambda_power == t.p - 1);
            CHECK(t.status == (t.p == 0   ? LimitStatus::diverges
                               : t.p == 1 ? LimitStatus::survives
                                          : LimitStatus::vanishes));
          }
          const auto rvv = reduced_vv(q1, m, q2, n);
          SymbolicModeCombination want;
          for (const auto& [mode, c] : rvv.terms()) want.add(mode, c);
          CHECK(vv.reduced == want);
          const auto vg = rescale_limit(RescaledBracket::vg, q1, m, q2, n, none);
          const auto rvg = reduced_vg(q1, m, q2, n);
          SymbolicModeCombination want_g;
          for (const auto& [mode, c] : rvg.terms()) want_g.add(mode, c);
          CHECK(vg.reduced == want_g);
        }
      }
    }
  }
}

TEST_CASE("a vanishing p = 0 entry removes the divergence") {
  GhatTable g;
  g.set(HalfInt(2), HalfInt(3), HalfInt(1), HalfInt(0), 0, Rational(0));
  CHECK_FALSE(rescale_limit(RescaledBracket::vv, HalfInt(2), HalfInt(1), HalfInt(3), HalfInt(0), g)
                  .divergent);
  CHECK(rescale_limit(RescaledBracket::vv, HalfInt(2), HalfInt(1), HalfInt(3), HalfInt(0),
                      GhatTable{})
            .divergent);
}

TEST_CASE("reduced bracket satisfies Jacobi") {
  const auto v = [](int q, int m) {
    return GeneratorMode{GeneratorLabel{Family::v, HalfInt(q), std::nullopt}, HalfInt(m)};
  };
  CHECK(reduced_jacobi_residual(v(3, 1), v(2, -1), v(4, 2)).empty());
  CHECK(reduced_jacobi_residual(v(2, 0), v(2, 1), v(3, -2)).empty());
}
