#include "doctest.h"
#include "walg/error.hpp"
#include "walg/ope.hpp"
#include "walg/structure.hpp"

using namespace walg;

namespace {
const CouplingRegistry kUnit = CouplingRegistry::unit();

/// -Res_{t=0} of (wb+t)^A t^{-B}: the coefficient of t^{B-1} in the series
/// of (1 + t/wb)^A, built from the recursion c_{j+1} = c_j (A-j)/(j+1).
Rational minus_residue(const Rational& A, int B) {
  if (B <= 0) return Rational(0);
  Rational c(1);
  for (int j = 0; j < B - 1; ++j) c = c * (A - Rational(j)) / Rational(j + 1);
  return -c;
}
}  // namespace

TEST_CASE("canonical OPE at unit weight 2") {
  const auto e = canonicalize(
      build_wtilde_ope(HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(2), kUnit, 1));
  const GeneratorLabel w2 = wtilde_label(HalfInt(2), HalfInt(2));
  OpeExpansion want;
  want.add(OpeKey{1, 1, 1, w2}, Rational(-1));
  want.add(OpeKey{1, 2, 0, w2}, Rational(-2));
  CHECK(e == want);
}

TEST_CASE("canonicalize is idempotent through to_raw") {
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(3))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(3))) {
      const auto e = canonicalize(build_wtilde_ope(q1, HalfInt(2), q2, HalfInt(2), kUnit));
      CHECK(canonicalize(to_raw(e)) == e);
    }
  }
}

TEST_CASE("mode extraction reproduces the bracket") {
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(3))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(3))) {
      const auto e = canonicalize(build_wtilde_ope(q1, HalfInt(2), q2, HalfInt(2), kUnit));
      for (auto m : wedge_modes(q1)) {
        for (auto n : wedge_modes(q2)) {
          CHECK(mode_extract(e, m, n, q1, q2) ==
                wtilde_bracket(wtilde_mode(q1, HalfInt(2), m),
                               wtilde_mode(q2, HalfInt(2), n), kUnit));
        }
      }
    }
  }
}

TEST_CASE("formal contour rule equals minus the residue") {
  for (int A = -8; A <= 8; ++A) {
    for (int B = -2; B <= 6; ++B) {
      CHECK(zbar_contour(ContourRule::formal, Rational(A), B) == minus_residue(Rational(A), B));
    }
  }
  // half-integral exponents as well
  for (int A2 = -9; A2 <= 9; A2 += 2) {
    for (int B = 1; B <= 6; ++B) {
      const Rational A(A2, 2);
      CHECK(zbar_contour(ContourRule::formal, A, B) == minus_residue(A, B));
    }
  }
}

TEST_CASE("the alternating rule differs from the formal one") {
  CHECK(zbar_contour(ContourRule::alternating, Rational(3), 2) ==
        -zbar_contour(ContourRule::formal, Rational(3), 2));
}

TEST_CASE("soft OPE extraction matches the soft bracket") {
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(3))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(3))) {
      const auto l1 = soft_label_for(q1, HalfInt(2));
      const auto l2 = soft_label_for(q2, HalfInt(2));
      const auto e = build_soft_ope(l1.q, HalfInt(2), l2.q, HalfInt(2), kUnit, 12);
      for (auto m : soft_modes(l1.q, HalfInt(2))) {
        for (auto n : soft_modes(l2.q, HalfInt(2))) {
          const GeneratorMode a{l1, m}, b{l2, n};
          CHECK(mode_extract_soft(e, a, b) == soft_bracket(a, b, kUnit));
        }
      }
    }
  }
}

TEST_CASE("soft bracket maps to the W~ bracket") {
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(3))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(3))) {
      const auto l1 = soft_label_for(q1, HalfInt(2));
      const auto l2 = soft_label_for(q2, HalfInt(2));
      for (auto m : soft_modes(l1.q, HalfInt(2))) {
        for (auto n : soft_modes(l2.q, HalfInt(2))) {
          const auto f1 = wtilde_from_soft(GeneratorMode{l1, m}, q1);
          const auto f2 = wtilde_from_soft(GeneratorMode{l2, n}, q2);
          const auto hb = soft_bracket(GeneratorMode{l1, m}, GeneratorMode{l2, n}, kUnit);
          ModeCombination mapped;
          for (const auto& [mode, c] : hb.terms()) {
            const HalfInt q3 = HalfInt::from_rational(
                Rational(1) - (mode.label.q - *mode.label.s).to_rational() / Rational(2));
            const auto f3 = wtilde_from_soft(mode, q3);
            mapped.add(f3.w_mode, c * f1.factor * f2.factor / f3.factor);
          }
          CHECK(mapped == wtilde_bracket(f1.w_mode, f2.w_mode, kUnit));
        }
      }
    }
  }
}

TEST_CASE("grade 0 template term") {
  const auto e = canonicalize(
      build_wtilde_ope(HalfInt(2), HalfInt(1), HalfInt(3), HalfInt(1), kUnit, 0));
  OpeExpansion want;
  want.add(OpeKey{1, 1, 0, wtilde_label(HalfInt(4), HalfInt(1))}, Rational(1, 2));
  CHECK(e == want);
}

TEST_CASE("canonicalization moves derivatives onto the pole") {
  const GeneratorLabel w = wtilde_label(HalfInt(2), HalfInt(2));
  BasicRawTerm<Rational> dz{Rational(1), 1, 1, 1, 0, 0, w, 0, 0};
  OpeExpansion a;
  a.add(OpeKey{1, 2, 0, w}, Rational(-1));
  CHECK(canonicalize_term(dz) == a);
  BasicRawTerm<Rational> dw{Rational(1), 1, 1, 0, 1, 0, w, 0, 0};
  OpeExpansion b;
  b.add(OpeKey{1, 2, 0, w}, Rational(1));
  b.add(OpeKey{1, 1, 1, w}, Rational(1));
  CHECK(canonicalize_term(dw) == b);
}

TEST_CASE("extraction of single terms") {
  const GeneratorLabel w = wtilde_label(HalfInt(3), HalfInt(2));
  OpeExpansion simple;
  simple.add(OpeKey{1, 1, 0, w}, Rational(1));
  for (auto m : wedge_modes(HalfInt(2))) {
    for (auto n : wedge_modes(HalfInt(2))) {
      const auto r = mode_extract(simple, m, n, HalfInt(2), HalfInt(2));
      ModeCombination want;
      want.add(wtilde_mode(HalfInt(3), HalfInt(2), m + n), Rational(-1));
      CHECK(r == want);
    }
  }
  OpeExpansion double_hol;
  double_hol.add(OpeKey{2, 1, 0, w}, Rational(1));
  CHECK(mode_extract(double_hol, HalfInt(1), HalfInt(0), HalfInt(2), HalfInt(2)).empty());
}

TEST_CASE("soft OPE leading coefficient") {
  // hbar1 = hbar2 = 0: k = s
  const auto e = build_soft_ope(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1), kUnit, 0, 0);
  REQUIRE(e.size() == 1);
  CHECK(e.terms().begin()->second == Rational(-1, 2));
}
