#include "walg/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "walg/error.hpp"

namespace walg {

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw SchemaError(std::string("not an exact rational: ") + e.what(), where);
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw SchemaError("expected an exact rational string such as \"3/2\"", where);
}

HalfInt halfint_from_json(const Json& j, const std::string& where) {
  const Rational r = rational_from_json(j, where);
  if (!(r * Rational(2)).is_integer()) {
    throw SchemaError("expected an integer or half-integer", where);
  }
  return HalfInt::from_rational(r);
}

Json to_json(const Rational& r) { return r.to_string(); }

Json to_json(const GeneratorLabel& l) {
  Json j;
  j["family"] = family_name(l.family);
  j[l.family == Family::h ? "k" : "q"] = l.q.to_string();
  if (l.s) j["s"] = l.s->to_string();
  return j;
}

Json to_json(const GeneratorMode& m) {
  Json j = to_json(m.label);
  j["m"] = m.m.to_string();
  return j;
}

Json to_json(const Diagnostic& d) { return Json{{"code", d.code}, {"detail", d.detail}}; }

namespace {

template <class C>
Json combination_json(const BasicModeCombination<C>& c) {
  Json terms = Json::array();
  for (const auto& [mode, coeff] : c.terms()) {
    terms.push_back(Json{{"mode", to_json(mode)}, {"coeff", coeff.to_string()}});
  }
  Json diags = Json::array();
  for (const auto& d : c.diagnostics()) diags.push_back(to_json(d));
  return Json{{"terms", terms}, {"diagnostics", diags}};
}

template <class C>
Json expansion_json(const BasicOpeExpansion<C>& e) {
  Json terms = Json::array();
  for (const auto& [key, coeff] : e.terms()) {
    Json t = to_json(key);
    t["coeff"] = coeff.to_string();
    terms.push_back(t);
  }
  return Json{{"terms", terms}};
}

Json string_list(const std::vector<std::string>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

}  // namespace

Json to_json(const ModeCombination& c) { return combination_json(c); }
Json to_json(const SymbolicModeCombination& c) { return combination_json(c); }

Json to_json(const OpeKey& k) {
  return Json{{"hol_pole", k.hol_pole},
              {"antihol_pole", k.antihol_pole},
              {"dbar", k.dbar},
              {"target", to_json(k.target)}};
}

Json to_json(const OpeExpansion& e) { return expansion_json(e); }
Json to_json(const SymbolicOpeExpansion& e) { return expansion_json(e); }

Json to_json(const ConstraintViolation& v) {
  return Json{{"index", v.index},
              {"kind", v.kind == ViolationKind::violated ? "violated" : "division-by-zero"},
              {"constraint", v.constraint},
              {"lhs", to_json(v.lhs)},
              {"rhs", to_json(v.rhs)}};
}

Json to_json(const CouplingRegistry& r) {
  Json entries = Json::array();
  for (const auto& [k, v] : r.entries()) {
    entries.push_back(Json{{"s1", k.s1.to_string()},
                           {"s2", k.s2.to_string()},
                           {"s3", k.s3.to_string()},
                           {"kappa", v.to_string()}});
  }
  Json j;
  j["default"] = r.fallback() ? Json(r.fallback()->to_string()) : Json(nullptr);
  j["entries"] = entries;
  return j;
}

Json to_json(const WickOpe& w) {
  Json raw = Json::array();
  for (const auto& [key, c] : w.raw.terms) {
    raw.push_back(Json{{"bilinear", to_string(key)}, {"coeff", c.to_string()}});
  }
  Json diags = Json::array();
  for (const auto& d : w.diagnostics) diags.push_back(to_json(d));
  return Json{{"expansion", to_json(w.expansion)},
              {"diagnostics", diags},
              {"raw", raw},
              {"double_contractions_skipped", w.raw.double_contractions_skipped}};
}

Json to_json(const SolveAlphaReport& r) {
  Json j;
  j["consistent"] = r.consistent;
  if (r.first_failure) {
    j["first_failure"] = Json{{"level", r.first_failure->level},
                              {"group", r.first_failure->group},
                              {"monomial", r.first_failure->monomial},
                              {"residual", r.first_failure->residual.to_string()}};
  } else {
    j["first_failure"] = nullptr;
  }
  Json alpha = Json::object();
  for (const auto& [k, v] : r.alpha) alpha[k] = v.to_string();
  j["alpha"] = alpha;
  j["pinned_free"] = string_list(r.pinned_free);
  Json levels = Json::object();
  for (const auto& [l, z] : r.level_residual_zero) levels[std::to_string(l)] = z;
  j["level_residual_zero"] = levels;
  j["equation_count"] = r.equations.size();
  return j;
}

Json to_json(const BConstantsReport& r) {
  Json values = Json::object();
  for (const auto& [k, v] : r.values) values[k] = v.to_string();
  return Json{{"consistent", r.consistent},
              {"first_failure", r.first_failure ? Json(*r.first_failure) : Json(nullptr)},
              {"values", values},
              {"free_unknowns", string_list(r.free_unknowns)}};
}

Json to_json(const VhatExpression& v) {
  Json origins = Json::array();
  for (const auto& [p, x] : v.origins) origins.push_back(Json{{"p", p}, {"x", x}});
  return Json{{"generator", to_json(v.generator)},
              {"origins", origins},
              {"off_diagonal_remnants", v.off_diagonal_remnants}};
}

Json to_json(const RescaleReport& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    terms.push_back(Json{{"p", t.p},
                         {"lambda_power", t.lambda_power},
                         {"status", to_string(t.status)},
                         {"target", to_json(t.target)},
                         {"coeff", t.coeff.to_string()}});
  }
  return Json{{"terms", terms}, {"reduced", to_json(r.reduced)}, {"divergent", r.divergent}};
}

Json to_json(const SweepResult& r) {
  return Json{{"checked", r.checked}, {"failures", string_list(r.failures)}};
}

Json to_json(const std::vector<VanishingEntry>& v) {
  Json out = Json::array();
  for (const auto& e : v) {
    out.push_back(Json{{"p", e.p}, {"vanishes", e.vanishes}, {"N", e.n.to_string()}});
  }
  return out;
}

Json to_json(const std::vector<NTableRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back(Json{{"q1", r.q1.to_string()},
                       {"q2", r.q2.to_string()},
                       {"m", r.m.to_string()},
                       {"n", r.n.to_string()},
                       {"p", r.p},
                       {"N", r.value.to_string()}});
  }
  return out;
}

CouplingRegistry registry_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("registry must be an object", "");
  for (const auto& [k, v] : j.items()) {
    if (k != "default" && k != "entries") throw SchemaError("unknown field", "/" + k);
  }
  CouplingRegistry reg;
  if (auto it = j.find("default"); it != j.end() && !it->is_null()) {
    reg.set_default(rational_from_json(*it, "/default"));
  }
  auto it = j.find("entries");
  if (it == j.end()) return reg;
  if (!it->is_array()) throw SchemaError("must be an array", "/entries");
  std::set<CouplingKey> seen;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const std::string at = "/entries/" + std::to_string(i);
    const Json& e = (*it)[i];
    if (!e.is_object()) throw SchemaError("entry must be an object", at);
    for (const auto& [k, v] : e.items()) {
      if (k != "s1" && k != "s2" && k != "s3" && k != "kappa") {
        throw SchemaError("unknown field", at + "/" + k);
      }
    }
    auto field = [&](const char* name) -> const Json& {
      auto f = e.find(name);
      if (f == e.end()) throw SchemaError(std::string("missing field ") + name, at);
      return *f;
    };
    const CouplingKey key{halfint_from_json(field("s1"), at + "/s1"),
                          halfint_from_json(field("s2"), at + "/s2"),
                          halfint_from_json(field("s3"), at + "/s3")};
    if (!seen.insert(key).second) {
      throw SchemaError("duplicate coupling " + to_string(key), at);
    }
    reg.set(key, rational_from_json(field("kappa"), at + "/kappa"));
  }
  return reg;
}

CouplingRegistry parse_registry(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports a byte offset; translate it to line and column.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("invalid registry JSON", static_cast<int>(line), static_cast<int>(col));
  }
  return registry_from_json(j);
}

CouplingRegistry load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open registry file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_registry(ss.str());
}

// ---------------------------------------------------------------------------
// LaTeX

std::string latex(const Rational& r) {
  if (r.is_integer()) return r.to_string();
  const std::string sign = r.sign() < 0 ? "-" : "";
  const Rational a = abs(r);
  return sign + "\\frac{" + a.numerator().get_str() + "}{" + a.denominator().get_str() + "}";
}

std::string latex(const Polynomial& p) {
  std::string s = p.to_string();
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '*') {
      out += ' ';
    } else if (c == '^') {
      // wrap the exponent
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out += "^{" + s.substr(i + 1, j - i - 1) + "}";
      i = j - 1;
    } else if (c == '[') {
      out += "^{";
    } else if (c == ']') {
      out += "}";
    } else {
      out += c;
    }
  }
  for (auto [from, to] : {std::pair<std::string, std::string>{"Bt^", "\\tilde B^"},
                          {"ghat^", "\\hat g^"}}) {
    for (std::size_t pos = out.find(from); pos != std::string::npos; pos = out.find(from, pos)) {
      out.replace(pos, from.size(), to);
      pos += to.size();
    }
  }
  return out;
}

namespace {

std::string latex_symbol(const GeneratorLabel& l) {
  const std::string q = l.q.is_integer() ? l.q.to_string() : latex(l.q.to_rational());
  switch (l.family) {
    case Family::h:
      return "H^{" + q + "," + (l.s ? l.s->to_string() : "?") + "}";
    case Family::w:
      return "w^{" + q + "}";
    case Family::wtilde:
      return "\\widetilde{W}^{" + q + (l.s ? "," + l.s->to_string() : "") + "}";
    case Family::wtilde2:
      return "\\widetilde{\\widetilde{W}}^{" + q + "}";
    case Family::gplus:
      return "G^{" + q + "+}";
    case Family::gminus:
      return "G^{" + q + "-}";
    case Family::vhat:
      return "\\hat{V}^{" + q + "}";
    case Family::v:
      return "v^{" + q + "}";
    case Family::ghat:
      return "\\hat{G}^{" + q + "}";
  }
  return "?";
}

std::string latex_half(HalfInt h) {
  return h.is_integer() ? h.to_string() : latex(h.to_rational());
}

std::string with_sign(const std::string& coeff, bool first) {
  if (first) return coeff;
  if (!coeff.empty() && coeff.front() == '-') return " - " + coeff.substr(1);
  return " + " + coeff;
}

std::string latex_coeff(const Rational& c) {
  if (c == Rational(1)) return "";
  if (c == Rational(-1)) return "-";
  return latex(c);
}

std::string latex_coeff(const Polynomial& c) {
  if (c.is_constant()) return latex_coeff(c.constant_value());
  return "\\left(" + latex(c) + "\\right)";
}

template <class C>
std::string combination_latex(const BasicModeCombination<C>& c) {
  if (c.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mode, coeff] : c.terms()) {
    out += with_sign(latex_coeff(coeff) + latex(mode), first);
    first = false;
  }
  return out;
}

template <class C>
std::string expansion_latex(const BasicOpeExpansion<C>& e) {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, coeff] : e.terms()) {
    std::string term = latex_coeff(coeff);
    if (k.hol_pole != 0) {
      term += "\\frac{1}{(z-w)" + (k.hol_pole == 1 ? "" : "^{" + std::to_string(k.hol_pole) + "}") +
              "}";
    }
    if (k.antihol_pole > 0) {
      term += "\\frac{1}{(\\bar z-\\bar w)" +
              (k.antihol_pole == 1 ? "" : "^{" + std::to_string(k.antihol_pole) + "}") + "}";
    } else if (k.antihol_pole < 0) {
      term += "(\\bar z-\\bar w)^{" + std::to_string(-k.antihol_pole) + "}";
    }
    if (k.dbar == 1) term += "\\partial_{\\bar w}";
    if (k.dbar > 1) term += "\\partial_{\\bar w}^{" + std::to_string(k.dbar) + "}";
    term += latex_symbol(k.target);
    out += with_sign(term, first);
    first = false;
  }
  return out;
}

}  // namespace

std::string latex(const GeneratorMode& m) {
  return latex_symbol(m.label) + "_{" + latex_half(m.m) + "}";
}

std::string latex(const ModeCombination& c) { return combination_latex(c); }
std::string latex(const SymbolicModeCombination& c) { return combination_latex(c); }
std::string latex(const OpeExpansion& e) { return expansion_latex(e); }
std::string latex(const SymbolicOpeExpansion& e) { return expansion_latex(e); }

}  // namespace walg
