#include "walg/coupling.hpp"

#include "walg/error.hpp"

namespace walg {

namespace {

CouplingKey key(int a, int b, int c) { return CouplingKey{a, b, c}; }

Rational require(const CouplingRegistry& reg, const CouplingKey& k) {
  auto v = reg.explicit_value(k);
  if (!v) {
    throw DomainError("kappa constraint check needs an explicit entry for " +
                      to_string(k));
  }
  return *v;
}

}  // namespace

CouplingKey bracket_key(HalfInt s1, HalfInt s2, int p) {
  const HalfInt s_internal = s1 + s2 - HalfInt(p + 1);
  return CouplingKey{s1, s2, -s_internal};
}

std::string to_string(const CouplingKey& k) {
  return "kappa[" + k.s1.to_string() + "," + k.s2.to_string() + "," +
         k.s3.to_string() + "]";
}

Rational CouplingRegistry::lookup(const CouplingKey& k) const {
  auto it = entries_.find(k);
  if (it != entries_.end()) return it->second;
  if (default_) return *default_;
  throw DomainError("missing coupling " + to_string(k));
}

std::optional<Rational> CouplingRegistry::explicit_value(const CouplingKey& k) const {
  auto it = entries_.find(k);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string kappa_constraint_text(int index) {
  switch (index) {
    case 1: return "kappa[0,1,1]/kappa[-2,2,2] = kappa[1,1,2]/kappa[0,2,2]";
    case 2: return "kappa[-1,1,1]/kappa[-1,1,2] = kappa[1,1,1]/(3*kappa[1,1,2])";
    case 3: return "kappa[-1,1,1] = kappa[0,0,1]";
    case 4: return "kappa[0,1,1]^2 = 2*kappa[1,1,1]*kappa[-1,1,1]";
    default: throw DomainError("no kappa constraint with index " + std::to_string(index));
  }
}

std::vector<CouplingKey> kappa_constraint_keys() {
  return {key(0, 1, 1),  key(-2, 2, 2), key(1, 1, 2),  key(0, 2, 2),
          key(-1, 1, 1), key(-1, 1, 2), key(1, 1, 1),  key(0, 0, 1)};
}

std::vector<ConstraintViolation> kappa_conditions(const CouplingRegistry& reg) {
  const Rational k011 = require(reg, key(0, 1, 1));
  const Rational km222 = require(reg, key(-2, 2, 2));
  const Rational k112 = require(reg, key(1, 1, 2));
  const Rational k022 = require(reg, key(0, 2, 2));
  const Rational km111 = require(reg, key(-1, 1, 1));
  const Rational km112 = require(reg, key(-1, 1, 2));
  const Rational k111 = require(reg, key(1, 1, 1));
  const Rational k001 = require(reg, key(0, 0, 1));

  std::vector<ConstraintViolation> out;
  auto record = [&](int index, ViolationKind kind, Rational lhs, Rational rhs) {
    out.push_back(ConstraintViolation{index, kind, kappa_constraint_text(index),
                                      std::move(lhs), std::move(rhs)});
  };
  auto ratio_check = [&](int index, const Rational& a, const Rational& b,
                         const Rational& c, const Rational& d) {
    // a/b = c/d
    if (b.is_zero() || d.is_zero()) {
      record(index, ViolationKind::division_by_zero, 0, 0);
      return;
    }
    const Rational lhs = a / b;
    const Rational rhs = c / d;
    if (lhs != rhs) record(index, ViolationKind::violated, lhs, rhs);
  };

  ratio_check(1, k011, km222, k112, k022);
  ratio_check(2, km111, km112, k111, Rational(3) * k112);
  if (km111 != k001) record(3, ViolationKind::violated, km111, k001);
  const Rational lhs4 = k011 * k011;
  const Rational rhs4 = Rational(2) * k111 * km111;
  if (lhs4 != rhs4) record(4, ViolationKind::violated, lhs4, rhs4);
  return out;
}

}  // namespace walg
