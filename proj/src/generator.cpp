#include "walg/generator.hpp"

#include <array>
#include <utility>

#include "walg/error.hpp"

namespace walg {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kNames{{
    {Family::h, "h"},
    {Family::w, "w"},
    {Family::wtilde, "wtilde"},
    {Family::wtilde2, "wtilde2"},
    {Family::gplus, "gplus"},
    {Family::gminus, "gminus"},
    {Family::vhat, "vhat"},
    {Family::v, "v"},
    {Family::ghat, "ghat"},
}};

bool in_range(HalfInt lo, HalfInt hi, HalfInt m) {
  return lo <= m && m <= hi && (m - lo).is_integer();
}

}  // namespace

std::string family_name(Family f) {
  for (const auto& [fam, name] : kNames) {
    if (fam == f) return std::string(name);
  }
  return "?";
}

Family family_from_name(std::string_view name) {
  for (const auto& [fam, n] : kNames) {
    if (n == name) return fam;
  }
  throw DomainError("unknown generator family '" + std::string(name) + "'");
}

bool is_fermionic(Family f) {
  return f == Family::gplus || f == Family::gminus || f == Family::ghat;
}

GeneratorLabel wtilde_label(HalfInt q, std::optional<HalfInt> s) {
  return GeneratorLabel{Family::wtilde, q, s};
}

GeneratorMode wtilde_mode(HalfInt q, HalfInt s, HalfInt m) {
  return GeneratorMode{wtilde_label(q, s), m};
}

GeneratorMode soft_mode(HalfInt k, HalfInt s, HalfInt m) {
  return GeneratorMode{GeneratorLabel{Family::h, k, s}, m};
}

void validate_label(const GeneratorLabel& l) {
  if (l.s && l.s->doubled() <= 0) {
    throw DomainError("spin s must be positive in " + to_string(l));
  }
  switch (l.family) {
    case Family::wtilde:
    case Family::wtilde2:
      if (l.q < HalfInt(1)) throw DomainError("weight q must be >= 1 in " + to_string(l));
      break;
    case Family::gplus:
    case Family::gminus:
      if (l.q < HalfInt::from_doubled(3)) {
        throw DomainError("weight q must be >= 3/2 in " + to_string(l));
      }
      break;
    case Family::h:
      if (!l.s) throw DomainError("soft current needs a spin s: " + to_string(l));
      break;
    default:
      break;
  }
}

bool in_wedge(const GeneratorMode& mode) {
  const auto& l = mode.label;
  if (l.family == Family::h) {
    if (!l.s) return false;
    const HalfInt diff = l.q - *l.s;  // k - s = 2 hbar
    if (diff.doubled() % 2 != 0) {
      // hbar is a quarter-integer; no mode is admissible.
      return false;
    }
    const HalfInt hbar = HalfInt::from_doubled(diff.doubled() / 2);
    return in_range(hbar, -hbar, mode.m);
  }
  const HalfInt top = l.q - HalfInt(1);
  return in_range(-top, top, mode.m);
}

std::vector<HalfInt> wedge_modes(HalfInt q) {
  std::vector<HalfInt> out;
  const HalfInt top = q - HalfInt(1);
  for (HalfInt m = -top; m <= top; m += HalfInt(1)) out.push_back(m);
  return out;
}

std::vector<HalfInt> soft_modes(HalfInt k, HalfInt s) {
  std::vector<HalfInt> out;
  const HalfInt diff = k - s;
  if (diff.doubled() % 2 != 0) return out;
  const HalfInt hbar = HalfInt::from_doubled(diff.doubled() / 2);
  for (HalfInt m = hbar; m <= -hbar; m += HalfInt(1)) out.push_back(m);
  return out;
}

std::vector<HalfInt> weight_grid(HalfInt q_min, HalfInt q_max) {
  std::vector<HalfInt> out;
  for (HalfInt q = q_min; q <= q_max; q += HalfInt::from_doubled(1)) out.push_back(q);
  return out;
}

std::string to_string(const GeneratorLabel& l) {
  std::string out = family_name(l.family) + "[";
  out += (l.family == Family::h ? "k=" : "q=") + l.q.to_string();
  if (l.s) out += ",s=" + l.s->to_string();
  return out + "]";
}

std::string to_string(const GeneratorMode& m) {
  std::string out = to_string(m.label);
  out.pop_back();
  return out + ",m=" + m.m.to_string() + "]";
}

}  // namespace walg
