#include "doctest.h"
#include "walg/coupling.hpp"
#include "walg/error.hpp"
#include "walg/generator.hpp"
#include "walg/io.hpp"

using namespace walg;

namespace {
HalfInt h(int doubled) { return HalfInt::from_doubled(doubled); }

CouplingRegistry registry_file(const char* name) {
  return load_registry(std::string(WALG_REGISTRY_DIR) + "/" + name);
}
}  // namespace

TEST_CASE("wedge modes") {
  CHECK(wedge_modes(HalfInt(1)) == std::vector<HalfInt>{HalfInt(0)});
  CHECK(wedge_modes(h(3)) == std::vector<HalfInt>{h(-1), h(1)});
  CHECK(wedge_modes(HalfInt(3)).size() == 5);
  for (auto q : weight_grid(HalfInt(1), HalfInt(5))) {
    const auto modes = wedge_modes(q);
    CHECK(modes.size() == static_cast<std::size_t>((q + q - HalfInt(1)).to_int()));
    for (auto m : modes) CHECK(in_wedge(wtilde_mode(q, HalfInt(2), m)));
    CHECK_FALSE(in_wedge(wtilde_mode(q, HalfInt(2), q)));
  }
  CHECK(weight_grid(HalfInt(1), HalfInt(2)).size() == 3);
}

TEST_CASE("family names round trip") {
  for (auto f : {Family::h, Family::w, Family::wtilde, Family::wtilde2, Family::gplus,
                 Family::gminus, Family::vhat, Family::v, Family::ghat}) {
    CHECK(family_from_name(family_name(f)) == f);
  }
  CHECK_THROWS_AS(family_from_name("nope"), DomainError);
  CHECK(is_fermionic(Family::gplus));
  CHECK_FALSE(is_fermionic(Family::wtilde));
}

TEST_CASE("label validation") {
  CHECK_THROWS_AS(validate_label(GeneratorLabel{Family::wtilde, h(1), HalfInt(2)}),
                  DomainError);
  CHECK_NOTHROW(validate_label(GeneratorLabel{Family::wtilde, HalfInt(2), HalfInt(2)}));
}

TEST_CASE("coupling lookup") {
  CouplingRegistry reg(std::nullopt);
  reg.set({HalfInt(2), HalfInt(2), HalfInt(-2)}, Rational(3));
  CHECK(reg.lookup({HalfInt(2), HalfInt(2), HalfInt(-2)}) == Rational(3));
  CHECK_THROWS_AS(reg.lookup({HalfInt(1), HalfInt(1), HalfInt(1)}), DomainError);
  CHECK(CouplingRegistry::unit().lookup({HalfInt(9), HalfInt(9), HalfInt(9)}) == Rational(1));
  // key of grade p: (s1, s2, -(s1+s2-p-1))
  CHECK(bracket_key(HalfInt(2), HalfInt(2), 1) ==
        CouplingKey{HalfInt(2), HalfInt(2), HalfInt(-2)});
}

TEST_CASE("kappa constraints on the shipped registries") {
  const auto ones = registry_file("ones.json");
  const auto v = kappa_conditions(ones);
  REQUIRE(v.size() == 2);
  CHECK(v[0].index == 2);
  CHECK(v[1].index == 4);
  CHECK(kappa_conditions(registry_file("compliant.json")).empty());
  CHECK_THROWS_AS(kappa_conditions(CouplingRegistry(std::nullopt)), DomainError);
}

TEST_CASE("kappa constraints by hand") {
  // constraint 4 alone: k011^2 = 2 k111 k-111 with every ratio constraint met
  CouplingRegistry reg(std::nullopt);
  for (const auto& k : kappa_constraint_keys()) reg.set(k, Rational(1));
  reg.set({HalfInt(-1), HalfInt(1), HalfInt(1)}, Rational(1, 2));
  reg.set({HalfInt(0), HalfInt(0), HalfInt(1)}, Rational(1, 2));
  reg.set({HalfInt(-1), HalfInt(1), HalfInt(2)}, Rational(3, 2));
  CHECK(kappa_conditions(reg).empty());
  reg.set({HalfInt(0), HalfInt(2), HalfInt(2)}, Rational(0));
  const auto v = kappa_conditions(reg);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::division_by_zero);
}
