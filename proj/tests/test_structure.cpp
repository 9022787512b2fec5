#include <random>

#include "doctest.h"
#include "walg/error.hpp"
#include "walg/ope.hpp"
#include "walg/structure.hpp"

using namespace walg;

namespace {
HalfInt h(int doubled) { return HalfInt::from_doubled(doubled); }
const CouplingRegistry kUnit = CouplingRegistry::unit();
}  // namespace

TEST_CASE("grade range") {
  CHECK(p_range(HalfInt(2), HalfInt(2)) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(p_range(HalfInt(0), HalfInt(1)) == std::vector<int>{0, 1, 2});
  CHECK(p_range(HalfInt(-3), HalfInt(-2)) == std::vector<int>{0});
  CHECK_THROWS_AS(p_range(h(3), HalfInt(2)), DomainError);
}

TEST_CASE("N coefficient examples") {
  CHECK(n_coeff(HalfInt(2), HalfInt(2), HalfInt(1), HalfInt(-1), 1) == Rational(-4));
  CHECK(n_coeff(HalfInt(2), HalfInt(2), HalfInt(1), HalfInt(-1), 3) == Rational(0));
  CHECK(n_coeff(HalfInt(3), HalfInt(2), HalfInt(0), HalfInt(0), 0) == Rational(1));
  // p = 2 by hand at q1 = q2 = 2, m = n = 0:
  //   sum_x (-1)^{2-x} C(2,x) [1]_{2-x} [1]_x [1]_x [1]_{2-x} = 0 + (-2) + 0
  CHECK(n_coeff(HalfInt(2), HalfInt(2), HalfInt(0), HalfInt(0), 2) == Rational(-2));
}

TEST_CASE("N as a polynomial agrees with pointwise values") {
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(3))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(3))) {
      for (int p = 0; p <= 4; ++p) {
        const Polynomial a = n_poly(q1, q2, p, NRep::def);
        CHECK(a == n_poly(q1, q2, p, NRep::lemma));
        for (auto m : wedge_modes(q1)) {
          for (auto n : wedge_modes(q2)) {
            CHECK(a.evaluate({{"m", m.to_rational()}, {"n", n.to_rational()}}) ==
                  n_coeff(q1, q2, m, n, p));
          }
        }
      }
    }
  }
}

TEST_CASE("M polynomial is the top-degree part of N up to (-1)^p") {
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(3))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(3))) {
      for (int p = 0; p <= 4; ++p) {
        CHECK(n_poly(q1, q2, p).homogeneous_part({"m", "n"}, p) ==
              Polynomial(sign_power(p)) * m_poly(q1, q2, p));
      }
    }
  }
}

TEST_CASE("vanishing grades for unit weights and spins 2") {
  const auto report = vanishing_p_report(HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(2));
  REQUIRE(report.size() == 5);
  for (const auto& e : report) {
    CHECK(e.vanishes == (e.p >= 3));
    CHECK(e.vanishes == e.n.is_zero());
  }
}

TEST_CASE("truncated unit bracket is the w_{1+infinity} bracket") {
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(4))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(4))) {
      for (auto m : wedge_modes(q1)) {
        for (auto n : wedge_modes(q2)) {
          const auto b = wtilde_bracket(wtilde_mode(q1, HalfInt(2), m),
                                        wtilde_mode(q2, HalfInt(2), n), kUnit, 1);
          const Rational want = m.to_rational() * (q2.to_rational() - Rational(1)) -
                                n.to_rational() * (q1.to_rational() - Rational(1));
          ModeCombination expected;
          const GeneratorMode target = wtilde_mode(q1 + q2 - HalfInt(2), HalfInt(2), m + n);
          if (in_wedge(target) && target.label.q >= HalfInt(1)) expected.add(target, want);
          CHECK(b == expected);
        }
      }
    }
  }
}

TEST_CASE("bracket validation and drops") {
  CHECK_THROWS_AS(wtilde_bracket(wtilde_mode(HalfInt(2), HalfInt(2), HalfInt(3)),
                                 wtilde_mode(HalfInt(2), HalfInt(2), HalfInt(0)), kUnit),
                  DomainError);
  CHECK_THROWS_AS(wtilde_bracket(wtilde_mode(HalfInt(2), HalfInt(2), HalfInt(0)),
                                 wtilde_mode(HalfInt(2), HalfInt(2), HalfInt(0)),
                                 CouplingRegistry(std::nullopt)),
                  DomainError);
  // [W~^1_0, W~^1_0]: every target has q < 1
  const auto b = wtilde_bracket(wtilde_mode(HalfInt(1), HalfInt(2), HalfInt(0)),
                                wtilde_mode(HalfInt(1), HalfInt(2), HalfInt(0)), kUnit);
  CHECK(b.empty());
}

TEST_CASE("grade p of the bracket has swap parity (-1)^(p+1)") {
  auto grade = [](const GeneratorMode& a, const GeneratorMode& b, int p) {
    ModeCombination g = wtilde_bracket(a, b, kUnit, p);
    g.add(wtilde_bracket(a, b, kUnit, p - 1), Rational(-1));
    return g;
  };
  for (auto q1 : weight_grid(HalfInt(1), HalfInt(3))) {
    for (auto q2 : weight_grid(HalfInt(1), HalfInt(3))) {
      for (auto m : wedge_modes(q1)) {
        for (auto n : wedge_modes(q2)) {
          const auto a = wtilde_mode(q1, HalfInt(2), m), b = wtilde_mode(q2, HalfInt(2), n);
          for (int p = 1; p <= 5; ++p) {
            ModeCombination sum = grade(a, b, p);
            sum.add(grade(b, a, p), sign_power(p + 1));
            CHECK(sum.empty());
          }
        }
      }
    }
  }
}

TEST_CASE("Jacobi identity at p = 1 on a few triples") {
  const auto a = wtilde_mode(HalfInt(3), HalfInt(2), HalfInt(1));
  const auto b = wtilde_mode(h(5), HalfInt(2), h(-1));
  const auto c = wtilde_mode(HalfInt(2), HalfInt(2), HalfInt(0));
  CHECK(jacobi_residual(a, b, c, kUnit, 1).empty());
  CHECK(jacobi_residual(c, c, a, kUnit, 1).empty());
}

TEST_CASE("soft currents") {
  const auto l = soft_label_for(HalfInt(2), HalfInt(2));
  CHECK(l.family == Family::h);
  CHECK(l.q == HalfInt(0));
  CHECK(soft_hbar(l) == HalfInt(-1));
  CHECK(soft_modes(HalfInt(0), HalfInt(2)) ==
        std::vector<HalfInt>{HalfInt(-1), HalfInt(0), HalfInt(1)});
  for (auto q : weight_grid(HalfInt(1), HalfInt(4))) {
    const auto lab = soft_label_for(q, HalfInt(2));
    for (auto m : soft_modes(lab.q, HalfInt(2))) {
      const auto map = wtilde_from_soft(GeneratorMode{lab, m}, q);
      CHECK(map.w_mode == wtilde_mode(q, HalfInt(2), m));
      CHECK_FALSE(map.factor.is_zero());
    }
  }
}

TEST_CASE("grade 2 at unit weight 2") {
  CHECK(n_coeff(HalfInt(2), HalfInt(2), HalfInt(1), HalfInt(0), 2) == Rational(0));
  const auto m = Polynomial::variable("m"), n = Polynomial::variable("n");
  CHECK(n_poly(HalfInt(2), HalfInt(2), 2) ==
        Polynomial(2) * (m * m + n * n - m * n - Polynomial(1)));
  CHECK(m_poly(HalfInt(2), HalfInt(2), 2) == Polynomial(2) * (m * m - m * n + n * n));
  CHECK(m_poly(HalfInt(3), h(5), 1) == Polynomial(3) * m - Polynomial(4) * n);
}

TEST_CASE("full bracket at unit weight 2") {
  CouplingRegistry reg(std::nullopt);
  reg.set(bracket_key(HalfInt(2), HalfInt(2), 1), Rational(3));
  reg.set(bracket_key(HalfInt(2), HalfInt(2), 2), Rational(5));
  for (int p = 3; p <= 5; ++p) reg.set(bracket_key(HalfInt(2), HalfInt(2), p), Rational(7));
  const auto b = wtilde_bracket(wtilde_mode(HalfInt(2), HalfInt(2), HalfInt(1)),
                                wtilde_mode(HalfInt(2), HalfInt(2), HalfInt(-1)), reg);
  ModeCombination want;
  want.add(wtilde_mode(HalfInt(2), HalfInt(2), HalfInt(0)), Rational(6));
  want.add(wtilde_mode(HalfInt(1), HalfInt(1), HalfInt(0)), Rational(-10));
  CHECK(b == want);
}

TEST_CASE("vanishing report agrees with sampled values") {
  std::mt19937 rng(3);
  for (auto q : weight_grid(HalfInt(1), HalfInt(3))) {
    const auto report = vanishing_p_report(q, HalfInt(3), HalfInt(1), HalfInt(1));
    for (const auto& e : report) {
      bool all_zero = true;
      std::uniform_int_distribution<int> d(-20, 20);
      for (int i = 0; i < 20; ++i) {
        const HalfInt m(d(rng)), n(d(rng));
        if (!n_coeff(q, HalfInt(3), m, n, e.p).is_zero()) all_zero = false;
      }
      if (!e.vanishes) CHECK_FALSE(e.n.is_zero());
      if (e.vanishes) CHECK(all_zero);
    }
  }
  const auto unit = vanishing_p_report(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1));
  REQUIRE_FALSE(unit.empty());
  CHECK(unit.front().p == 0);
  CHECK_FALSE(unit.front().vanishes);
}
