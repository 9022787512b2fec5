#include "walg/freefield.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <tuple>

#include "walg/error.hpp"
#include "walg/structure.hpp"

namespace walg {

namespace {

constexpr std::array<std::pair<GhostKind, const char*>, 8> kGhostNames{{
    {GhostKind::c, "c"},
    {GhostKind::b, "b"},
    {GhostKind::ctilde, "ctilde"},
    {GhostKind::btilde, "btilde"},
    {GhostKind::gamma, "gamma"},
    {GhostKind::beta, "beta"},
    {GhostKind::gammabar, "gammabar"},
    {GhostKind::betabar, "betabar"},
}};

/// Position in the canonical order of a normal-ordered pair.
int rank(GhostKind k) {
  for (std::size_t i = 0; i < kGhostNames.size(); ++i) {
    if (kGhostNames[i].first == k) return static_cast<int>(i);
  }
  return 0;
}

const Polynomial& free_index() {
  static const Polynomial k = Polynomial::variable(kFreeIndex);
  return k;
}

/// Sign of reordering `order` (a permutation of 0..n-1) given the
/// statistics of the original positions.
int permutation_sign(const std::vector<int>& order, const std::vector<bool>& odd) {
  int sign = 1;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      if (order[a] > order[b] && odd[order[a]] && odd[order[b]]) sign = -sign;
    }
  }
  return sign;
}

bool shift_less(const Polynomial& a, const Polynomial& b) { return a.terms() < b.terms(); }

std::string field_text(GhostKind kind, int dbar, const Polynomial& shift) {
  std::ostringstream os;
  if (dbar == 1) os << "dbar ";
  if (dbar > 1) os << "dbar^" << dbar << " ";
  os << ghost_name(kind) << "_{k";
  if (!shift.is_zero()) {
    const std::string s = shift.to_string();
    os << (s.front() == '-' ? "" : "+") << s;
  }
  os << "}";
  return os.str();
}

}  // namespace

std::string ghost_name(GhostKind k) {
  for (const auto& [kind, name] : kGhostNames) {
    if (kind == k) return name;
  }
  return "?";
}

GhostKind ghost_from_name(const std::string& name) {
  for (const auto& [kind, n] : kGhostNames) {
    if (name == n) return kind;
  }
  throw DomainError("unknown ghost field '" + name + "'");
}

bool is_anticommuting(GhostKind k) {
  return k == GhostKind::b || k == GhostKind::c || k == GhostKind::btilde ||
         k == GhostKind::ctilde;
}

std::optional<int> propagator_sign(GhostKind left, GhostKind right) {
  for (const auto& r : propagator_table()) {
    if (r.left == left && r.right == right) return r.sign;
  }
  return std::nullopt;
}

std::vector<PropagatorRule> propagator_table() {
  using G = GhostKind;
  return {
      {G::b, G::c, 1},           {G::c, G::b, 1},
      {G::btilde, G::ctilde, 1}, {G::ctilde, G::btilde, 1},
      {G::betabar, G::gamma, 1}, {G::beta, G::gammabar, 1},
      {G::gammabar, G::beta, -1}, {G::gamma, G::betabar, -1},
  };
}

std::optional<Contraction> contract_fields(const GhostField& x, const GhostField& y) {
  const auto sign = propagator_sign(x.kind, y.kind);
  if (!sign) return std::nullopt;
  if (!x.shift.is_constant() || !y.shift.is_constant()) {
    throw DomainError("contract_fields needs concrete indices");
  }
  if (x.shift != y.shift) return std::nullopt;
  // dzb^a dwb^b (zb-wb)^{-1} = (-1)^a (a+b)! (zb-wb)^{-1-a-b}
  const Rational c =
      Rational(*sign) * sign_power(x.dbar) * factorial(x.dbar + y.dbar);
  return Contraction{c, 1 + x.dbar + y.dbar};
}

bool operator<(const BilinearKey& a, const BilinearKey& b) {
  const auto ta = std::make_tuple(a.antihol_pole, a.first, a.first_dbar, a.second,
                                  a.second_dbar);
  const auto tb = std::make_tuple(b.antihol_pole, b.first, b.first_dbar, b.second,
                                  b.second_dbar);
  if (ta != tb) return ta < tb;
  return shift_less(a.shift, b.shift);
}

RawWickResult wick_raw(const BilinearCurrent& a, const BilinearCurrent& b,
                       const WickOptions& opts) {
  RawWickResult out;
  const Polynomial& k = free_index();
  for (const auto& sa : a.summands) {
    for (const auto& sb : b.summands) {
      const std::array<GhostField, 2> xs{sa.first, sa.second};
      const std::array<GhostField, 2> ys{sb.first, sb.second};
      const std::vector<bool> odd{
          is_anticommuting(xs[0].kind), is_anticommuting(xs[1].kind),
          is_anticommuting(ys[0].kind), is_anticommuting(ys[1].kind)};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          const auto prop = propagator_sign(xs[i].kind, ys[j].kind);
          if (!prop) continue;
          const GhostField& xr = xs[1 - i];
          const GhostField& yr = ys[1 - j];
          if (i == 0 && propagator_sign(xr.kind, yr.kind)) {
            ++out.double_contractions_skipped;
          }
          // Operators in the order x0 x1 y0 y1 (positions 0..3); bring the
          // contracted pair to the front, the survivors keep their order.
          const int sign = permutation_sign({i, 2 + j, 1 - i, 2 + (1 - j)}, odd);
          // delta: l + shift(y_j) = k + shift(x_i)
          const Polynomial l = k + xs[i].shift - ys[j].shift;
          const Polynomial coeff_b = sb.coeff.substitute(kFreeIndex, l);
          const Polynomial yr_shift = yr.shift + xs[i].shift - ys[j].shift;
          const int base_pole = 1 + xs[i].dbar + ys[j].dbar;
          const Rational prop_factor = Rational(*prop) * Rational(sign) *
                                       sign_power(xs[i].dbar) *
                                       factorial(xs[i].dbar + ys[j].dbar);
          const Polynomial base = sa.coeff * coeff_b;
          for (int r = 0; r < base_pole && r <= opts.antihol_order_max; ++r) {
            // Taylor expansion of the field left at z.
            Polynomial c = base;
            c *= prop_factor / factorial(r);
            GhostKind k1 = xr.kind, k2 = yr.kind;
            int d1 = xr.dbar + r, d2 = yr.dbar;
            Polynomial s1 = xr.shift, s2 = yr_shift;
            if (rank(k1) > rank(k2)) {
              std::swap(k1, k2);
              std::swap(d1, d2);
              std::swap(s1, s2);
              if (is_anticommuting(k1) && is_anticommuting(k2)) c = -c;
            }
            // Re-index so that the first field sits at the free index.
            c = c.substitute(kFreeIndex, k - s1);
            BilinearKey key{base_pole - r, k1, d1, k2, d2, s2 - s1};
            auto [it, inserted] = out.terms.emplace(key, c);
            if (!inserted) {
              it->second += c;
              if (it->second.is_zero()) out.terms.erase(it);
            }
          }
        }
      }
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (it->second.is_zero()) {
      it = out.terms.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

WickOpe wick_ope(const BilinearCurrent& a, const BilinearCurrent& b,
                 const CurrentFamily& family, const WickOptions& opts) {
  WickOpe out;
  out.raw = wick_raw(a, b, opts);

  // Group by (pole, kinds, shift).
  using GroupKey = std::tuple<int, GhostKind, GhostKind, std::string>;
  struct Group {
    int pole;
    GhostKind first, second;
    Polynomial shift;
    std::map<std::pair<int, int>, Polynomial> observed;
  };
  std::map<GroupKey, Group> groups;
  for (const auto& [key, c] : out.raw.terms) {
    for (const auto& v : c.variables()) {
      if (v != kFreeIndex) {
        throw DomainError("wick_ope recognition needs coefficients in the free index only");
      }
    }
    GroupKey gk{key.antihol_pole, key.first, key.second, key.shift.to_string()};
    auto [it, inserted] =
        groups.emplace(gk, Group{key.antihol_pole, key.first, key.second, key.shift, {}});
    it->second.observed[{key.first_dbar, key.second_dbar}] += c;
  }

  for (const auto& [gk, g] : groups) {
    auto describe = [&]() {
      std::ostringstream os;
      os << "pole " << g.pole << ":";
      for (const auto& [uv, c] : g.observed) {
        os << " (" << c << ") :" << field_text(g.first, uv.first, Polynomial(0)) << " "
           << field_text(g.second, uv.second, g.shift) << ":";
      }
      return os.str();
    };
    if (!g.shift.is_constant()) {
      out.diagnostics.push_back({"unrecognized-bilinear", "non-constant shift; " + describe()});
      continue;
    }
    const Rational q = g.shift.constant_value() - family.offset;
    const bool half_integral = (q * Rational(2)).is_integer();
    const BilinearCurrent j = family.make(q);
    bool kinds_ok = half_integral;
    int min_deg = 1 << 20;
    for (const auto& s : j.summands) {
      if (s.first.kind != g.first || s.second.kind != g.second || !s.first.shift.is_zero() ||
          s.second.shift != g.shift) {
        kinds_ok = false;
      }
      min_deg = std::min(min_deg, s.first.dbar + s.second.dbar);
    }
    if (!kinds_ok || j.summands.empty()) {
      out.diagnostics.push_back({"unrecognized-bilinear", describe()});
      continue;
    }
    int max_deg = 0;
    for (const auto& [uv, c] : g.observed) max_deg = std::max(max_deg, uv.first + uv.second);
    const int d_max = max_deg - min_deg;
    if (d_max < 0) {
      out.diagnostics.push_back({"unrecognized-bilinear", describe()});
      continue;
    }
    // sum_d lambda_d dbar^d J must equal the observed bilinears.
    std::map<std::pair<int, int>, Polynomial> lhs_unknown;  // (u,v) -> sum lambda_d * coeff
    std::vector<std::string> names;
    for (int d = 0; d <= d_max; ++d) {
      const std::string name = "lambda[" + std::to_string(d) + "]";
      names.push_back(name);
      const Polynomial lam = Polynomial::variable(name);
      for (const auto& s : j.summands) {
        for (int i = 0; i <= d; ++i) {
          const std::pair<int, int> uv{s.first.dbar + i, s.second.dbar + d - i};
          lhs_unknown[uv] += lam * s.coeff * Polynomial(binomial(Rational(d), i));
        }
      }
    }
    std::set<std::pair<int, int>> shapes;
    for (const auto& [uv, c] : lhs_unknown) shapes.insert(uv);
    for (const auto& [uv, c] : g.observed) shapes.insert(uv);
    std::vector<LinearEquation<Rational>> eqs;
    for (const auto& uv : shapes) {
      Polynomial residual;
      if (auto it = lhs_unknown.find(uv); it != lhs_unknown.end()) residual += it->second;
      if (auto it = g.observed.find(uv); it != g.observed.end()) residual -= it->second;
      // one equation per power of the free index
      std::map<Monomial, LinearEquation<Rational>> per_power;
      for (const auto& [mono, c] : residual.terms()) {
        Monomial rest;
        std::string unknown;
        for (const auto& [v, e] : mono) {
          if (v.rfind("lambda[", 0) == 0) {
            unknown = v;
          } else {
            rest.emplace(v, e);
          }
        }
        auto& eq = per_power[rest];
        if (unknown.empty()) {
          eq.rhs = eq.rhs - c;
        } else {
          eq.coeffs[unknown] = eq.coeffs[unknown] + c;
        }
      }
      for (auto& [mono, eq] : per_power) eqs.push_back(std::move(eq));
    }
    const auto sol = solve_linear(eqs, names);
    if (!sol.consistent) {
      out.diagnostics.push_back({"unrecognized-bilinear", describe()});
      continue;
    }
    if (!sol.free_unknowns.empty()) {
      out.diagnostics.push_back(
          {"ambiguous-recognition", "derivatives of the current are dependent; " + describe()});
    }
    const GeneratorLabel target{family.family, HalfInt::from_rational(q), std::nullopt};
    for (int d = 0; d <= d_max; ++d) {
      const Rational lam = sol.particular.at(names[d]);
      out.expansion.add(OpeKey{1, g.pole, d, target}, lam);
    }
  }
  return out;
}

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  const mpz_class n = r.numerator(), d = r.denominator();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(sn, sd));
}

namespace {

Rational require_sqrt(const Rational& kappa) {
  auto s = exact_sqrt(kappa);
  if (!s) {
    throw DomainError("kappa = " + kappa.to_string() +
                      " has no rational square root; pass a perfect square");
  }
  return *s;
}

BilinearCurrent two_term_current(const std::string& name, const Polynomial& c10,
                                 const Polynomial& c01, const Polynomial& shift) {
  BilinearCurrent out;
  out.name = name;
  out.summands.push_back(
      {c10, GhostField{GhostKind::c, 1, Polynomial(0)}, GhostField{GhostKind::b, 0, shift}});
  out.summands.push_back(
      {c01, GhostField{GhostKind::c, 0, Polynomial(0)}, GhostField{GhostKind::b, 1, shift}});
  return out;
}

}  // namespace

BilinearCurrent make_w_current(const Rational& q, const Rational& kappa) {
  const Rational s = require_sqrt(kappa);
  const Polynomial& k = free_index();
  return two_term_current("w^" + q.to_string(), Polynomial(-s * (q + Rational(2))),
                          Polynomial(-s) * (k + Polynomial(1)),
                          Polynomial(q - Rational(1)));
}

BilinearCurrent make_shifted_w_current(const Rational& q, const Rational& kappa,
                                       const Rational& a, const Rational& b) {
  const Rational s = require_sqrt(kappa);
  const Polynomial& k = free_index();
  return two_term_current("J^" + q.to_string(), Polynomial(-s) * (k + Polynomial(q + a)),
                          Polynomial(-s) * (k + Polynomial(b)),
                          Polynomial(q - Rational(2)));
}

CurrentFamily w_family(const Rational& kappa) {
  return CurrentFamily{Family::w, Rational(-1),
                       [kappa](const Rational& q) { return make_w_current(q, kappa); }};
}

CurrentFamily shifted_w_family(const Rational& kappa, const Rational& a,
                               const Rational& b) {
  return CurrentFamily{Family::w, Rational(-2), [kappa, a, b](const Rational& q) {
                         return make_shifted_w_current(q, kappa, a, b);
                       }};
}

// ---------------------------------------------------------------------------
// solve_alpha

namespace {

const Polynomial& var(const char* name) {
  thread_local std::map<std::string, Polynomial> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, Polynomial::variable(name)).first;
  return it->second;
}

bool is_alpha_unknown(const std::string& v) { return v.rfind("a[", 0) == 0; }

std::string alpha_key(int a, int b) { return std::to_string(a) + "," + std::to_string(b); }

std::string unknown_name(int a, int b, int i, int j) {
  return "a[" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(i) + "," +
         std::to_string(j) + "]";
}

struct AlphaModel {
  SolveAlphaOptions opts;
  Rational offset;
  /// alpha_{a,b}(q, k) in the variables "q", "k" and still-unknown parameters.
  std::map<std::pair<int, int>, Polynomial> alpha;
  std::map<int, std::vector<std::string>> unknowns_by_degree;

  explicit AlphaModel(const SolveAlphaOptions& o) : opts(o) {
    const Polynomial& q = var("q");
    const Polynomial& k = var("k");
    if (opts.seed == AlphaSeed::standard) {
      offset = -1;
      alpha[{1, 0}] = -(q + Polynomial(2));
    } else {
      offset = -2;
      alpha[{1, 0}] = -(q + k);
    }
    alpha[{0, 1}] = -(k + Polynomial(1));
    for (int d = 2; d <= opts.order_max; ++d) {
      for (int a = d; a >= 0; --a) {
        const int b = d - a;
        Polynomial poly;
        for (int i = 0; i <= opts.q_degree; ++i) {
          for (int j = 0; j <= opts.k_degree; ++j) {
            const std::string name = unknown_name(a, b, i, j);
            unknowns_by_degree[d].push_back(name);
            poly += Polynomial::variable(name) * q.pow(i) * k.pow(j);
          }
        }
        alpha[{a, b}] = poly;
      }
    }
  }

  Polynomial shift_for(const Polynomial& q_label) const { return q_label + Polynomial(offset); }

  BilinearCurrent current(const Polynomial& q_label, int max_degree) const {
    BilinearCurrent out;
    for (const auto& [ab, poly] : alpha) {
      if (ab.first + ab.second > max_degree) continue;
      out.summands.push_back({poly.substitute("q", q_label),
                              GhostField{GhostKind::c, ab.first, Polynomial(0)},
                              GhostField{GhostKind::b, ab.second, shift_for(q_label)}});
    }
    return out;
  }

  void substitute(const std::map<std::string, Polynomial>& values) {
    for (auto& [ab, poly] : alpha) poly = poly.substitute(values);
  }
};

/// Canonical p-grade template with symbolic q1, q2 and kappa = 1:
/// (pole, dbar) -> coefficient.
std::map<std::pair<int, int>, Polynomial> symbolic_wtilde_template(int p) {
  const Polynomial& q1 = var("q1");
  const Polynomial& q2 = var("q2");
  BasicRawOpeTemplate<Polynomial> raw;
  for (int x = 0; x <= p; ++x) {
    Polynomial c(sign_power(x) * binomial(Rational(p), x) / Rational(2));
    c = c * rising_product(Polynomial(2) * q1 - Polynomial(1 + p), x) *
        falling_product(Polynomial(2) * q2 - Polynomial(2 + x), p - x);
    if (c.is_zero()) continue;
    BasicRawTerm<Polynomial> t;
    t.coeff = c;
    t.dz = p - x;
    t.dw = x;
    t.target = GeneratorLabel{Family::wtilde, HalfInt(p), std::nullopt};
    t.p = p;
    t.x = x;
    raw.terms.push_back(t);
  }
  std::map<std::pair<int, int>, Polynomial> out;
  const auto canonical = canonicalize(raw);
  for (const auto& [key, c] : canonical.terms()) out[{key.antihol_pole, key.dbar}] += c;
  return out;
}

/// lhs - rhs per bilinear shape at one level.
std::map<BilinearKey, Polynomial> level_residual(const AlphaModel& model, int level) {
  const Polynomial& q1 = var("q1");
  const Polynomial& q2 = var("q2");
  const int top = std::min(model.opts.order_max, level - 1);
  std::map<BilinearKey, Polynomial> res;
  const RawWickResult lhs = wick_raw(model.current(q1, top), model.current(q2, top));
  for (const auto& [key, c] : lhs.terms) {
    if (key.antihol_pole + key.first_dbar + key.second_dbar == level) res[key] += c;
  }
  for (int p : model.opts.target_p) {
    const int dj = level - 1 - p;
    if (dj < 1 || dj > model.opts.order_max) continue;
    const Polynomial q3 = q1 + q2 - Polynomial(1 + p);
    const Polynomial shift = model.shift_for(q3);
    for (const auto& [pd, coeff] : symbolic_wtilde_template(p)) {
      const auto [pole, d] = pd;
      for (const auto& [ab, poly] : model.alpha) {
        if (ab.first + ab.second != dj) continue;
        const Polynomial realized = poly.substitute("q", q3);
        for (int i = 0; i <= d; ++i) {
          BilinearKey key{pole, GhostKind::c, ab.first + i, GhostKind::b,
                          ab.second + d - i, shift};
          res[key] -= coeff * realized * Polynomial(binomial(Rational(d), i));
        }
      }
    }
  }
  for (auto it = res.begin(); it != res.end();) {
    it = it->second.is_zero() ? res.erase(it) : std::next(it);
  }
  return res;
}

std::vector<MatchingEquation> equations_from(const std::map<BilinearKey, Polynomial>& res,
                                             int level) {
  std::vector<MatchingEquation> out;
  for (const auto& [key, poly] : res) {
    std::map<Monomial, Polynomial> by_monomial;
    for (const auto& [mono, c] : poly.terms()) {
      Monomial rest, unknown;
      for (const auto& [v, e] : mono) {
        (is_alpha_unknown(v) ? unknown : rest).emplace(v, e);
      }
      by_monomial[rest] += Polynomial::monomial(unknown, c);
    }
    for (const auto& [mono, form] : by_monomial) {
      if (form.is_zero()) continue;
      out.push_back(MatchingEquation{level, to_string(key),
                                     Polynomial::monomial(mono, 1).to_string(), form});
    }
  }
  return out;
}

LinearEquation<Rational> to_linear(const MatchingEquation& eq) {
  LinearEquation<Rational> out;
  out.label = eq.group + " @ " + eq.monomial;
  for (const auto& [mono, c] : eq.residual.terms()) {
    if (mono.empty()) {
      out.rhs = out.rhs - c;
    } else if (mono.size() == 1 && mono.begin()->second == 1) {
      out.coeffs[mono.begin()->first] = out.coeffs[mono.begin()->first] + c;
    } else {
      throw DomainError("internal: matching equation is not linear");
    }
  }
  return out;
}

int unknown_degree(const std::string& name) {
  // a[a,b;i,j] -> a+b
  const auto comma = name.find(',');
  const auto semi = name.find(';');
  return std::stoi(name.substr(2, comma - 2)) + std::stoi(name.substr(comma + 1, semi - comma - 1));
}

}  // namespace

SolveAlphaReport solve_alpha(const SolveAlphaOptions& opts) {
  if (opts.order_max < 1) throw DomainError("order_max must be at least 1");
  SolveAlphaReport report;
  AlphaModel model(opts);
  std::vector<MatchingEquation> all;
  const int last_level = opts.order_max + 2;

  for (int level = 2; level <= last_level; ++level) {
    auto eqs = equations_from(level_residual(model, level), level);
    for (auto& e : eqs) all.push_back(std::move(e));
    std::vector<LinearEquation<Rational>> lin;
    for (const auto& e : all) lin.push_back(to_linear(e));
    const auto sol = solve_linear(lin);
    if (!sol.consistent) {
      report.consistent = false;
      report.first_failure = all[*sol.first_inconsistent];
      break;
    }
    // Fix every unknown of degree level-2 (and whatever it depends on) so
    // that the next level stays linear.
    std::set<std::string> pin;
    for (const auto& [u, dep] : sol.dependence) {
      if (unknown_degree(u) > level - 2) continue;
      for (const auto& [f, c] : dep) pin.insert(f);
    }
    for (const auto& f : sol.free_unknowns) {
      if (unknown_degree(f) <= level - 2) pin.insert(f);
    }
    std::map<std::string, Polynomial> values;
    for (const auto& f : pin) {
      values[f] = Polynomial(0);
      report.pinned_free.push_back(f);
    }
    for (const auto& [u, val] : sol.particular) {
      if (unknown_degree(u) > level - 2 && !pin.count(u)) continue;
      if (pin.count(u)) continue;
      Polynomial v(val);
      for (const auto& [f, c] : sol.dependence.at(u)) {
        if (!pin.count(f)) v += Polynomial(c) * Polynomial::variable(f);
      }
      values[u] = v;
    }
    if (!values.empty()) {
      model.substitute(values);
      for (auto& e : all) e.residual = e.residual.substitute(values);
    }
  }
  report.equations = all;

  if (report.consistent) {
    // Anything still unknown is free: pin to zero.
    std::map<std::string, Polynomial> zeros;
    for (const auto& [ab, poly] : model.alpha) {
      for (const auto& v : poly.variables()) {
        if (is_alpha_unknown(v) && !zeros.count(v)) {
          zeros[v] = Polynomial(0);
          report.pinned_free.push_back(v);
        }
      }
    }
    if (!zeros.empty()) model.substitute(zeros);
  }
  for (const auto& [ab, poly] : model.alpha) report.alpha[alpha_key(ab.first, ab.second)] = poly;
  for (int level = 2; level <= last_level; ++level) {
    if (!report.consistent) break;
    report.level_residual_zero[level] = level_residual(model, level).empty();
  }
  std::sort(report.pinned_free.begin(), report.pinned_free.end());
  report.pinned_free.erase(std::unique(report.pinned_free.begin(), report.pinned_free.end()),
                           report.pinned_free.end());
  return report;
}

// ---------------------------------------------------------------------------
// B constants

OpeExpansion gg_real_target(HalfInt q1, HalfInt q2, const Rational& kappa) {
  const HalfInt q3 = q1 + q2 - HalfInt(1);
  const GeneratorLabel w{Family::wtilde, q3, std::nullopt};
  const GeneratorLabel ww{Family::wtilde2, q3, std::nullopt};
  const Rational a = q1.to_rational(), b = q2.to_rational();
  OpeExpansion out;
  out.add(OpeKey{1, 1, 0, w}, Rational(2) * kappa);
  out.add(OpeKey{1, 2, 0, ww}, Rational(-2) * kappa * (a + b - Rational(2)));
  out.add(OpeKey{1, 1, 1, ww}, Rational(-2) * kappa * (a - Rational(1)));
  return out;
}

std::map<GShape, Polynomial> gg_real_target_symbolic() {
  const Polynomial& q1 = var("q1");
  const Polynomial& q2 = var("q2");
  return {
      {GShape{1, 0, Family::wtilde}, Polynomial(2)},
      {GShape{2, 0, Family::wtilde2}, Polynomial(-2) * (q1 + q2 - Polynomial(2))},
      {GShape{1, 1, Family::wtilde2}, Polynomial(-2) * (q1 - Polynomial(1))},
  };
}

namespace {

std::vector<std::string> b_unknowns(int p_max) {
  std::vector<std::string> out;
  for (int p = 0; p <= p_max; ++p) {
    for (int x = 0; x <= p; ++x) {
      out.push_back(b_symbol(p, x, false));
      out.push_back(b_symbol(p, x, true));
    }
  }
  return out;
}

template <class F>
BConstantsReport finish_b(const std::map<GShape, Polynomial>& lhs,
                          const std::map<GShape, Polynomial>& rhs, int p_max,
                          const std::function<F(const Polynomial&)>& lift) {
  const std::vector<std::string> names = b_unknowns(p_max);
  std::set<GShape> shapes;
  for (const auto& [s, c] : lhs) shapes.insert(s);
  for (const auto& [s, c] : rhs) {
    if (s.antihol_pole + s.dbar <= p_max + 1) shapes.insert(s);
  }
  std::vector<LinearEquation<F>> eqs;
  std::vector<std::string> labels;
  for (const auto& s : shapes) {
    LinearEquation<F> eq;
    eq.label = "pole " + std::to_string(s.antihol_pole) + ", dbar " + std::to_string(s.dbar) +
               ", " + family_name(s.family);
    Polynomial left;
    if (auto it = lhs.find(s); it != lhs.end()) left = it->second;
    const auto parts = split_affine(left, names);
    for (const auto& [u, c] : parts) {
      if (u.empty()) continue;
      eq.coeffs[u] = lift(c);
    }
    Polynomial right;
    if (auto it = rhs.find(s); it != rhs.end()) right = it->second;
    if (auto it = parts.find(""); it != parts.end()) right -= it->second;
    eq.rhs = lift(right);
    labels.push_back(eq.label);
    eqs.push_back(std::move(eq));
  }
  const auto sol = solve_linear(eqs, names);
  BConstantsReport out;
  out.consistent = sol.consistent;
  if (!sol.consistent) {
    out.first_failure = labels[*sol.first_inconsistent];
    return out;
  }
  out.free_unknowns = sol.free_unknowns;
  for (const auto& [u, v] : sol.particular) {
    if (std::find(sol.free_unknowns.begin(), sol.free_unknowns.end(), u) !=
        sol.free_unknowns.end()) {
      continue;
    }
    if constexpr (std::is_same_v<F, RationalFunction>) {
      out.values.emplace(u, v);
    } else {
      out.values.emplace(u, RationalFunction(Polynomial(v)));
    }
  }
  return out;
}

}  // namespace

BConstantsReport match_B_constants_symbolic(int p_max) {
  const Polynomial& q1 = var("q1");
  const Polynomial& q2 = var("q2");
  BasicRawOpeTemplate<Polynomial> raw;
  for (int p = 0; p <= p_max; ++p) {
    for (int x = 0; x <= p; ++x) {
      Polynomial w(sign_power(x) * binomial(Rational(p), x) / Rational(2));
      w = w * rising_product(Polynomial(2) * q1 - Polynomial(1 + p), x) *
          falling_product(Polynomial(2) * q2 - Polynomial(2 + x), p - x);
      const std::pair<Family, Polynomial> parts[] = {
          {Family::wtilde, Polynomial::variable(b_symbol(p, x, false))},
          {Family::wtilde2,
           Polynomial(sign_power(p)) * Polynomial::variable(b_symbol(p, x, true))},
      };
      for (const auto& [family, bvar] : parts) {
        BasicRawTerm<Polynomial> t;
        t.coeff = w * bvar;
        if (t.coeff.is_zero()) continue;
        t.dz = p - x;
        t.dw = x;
        t.target = GeneratorLabel{family, HalfInt(p), std::nullopt};
        t.p = p;
        t.x = x;
        raw.terms.push_back(t);
      }
    }
  }
  std::map<GShape, Polynomial> lhs;
  const auto canonical = canonicalize(raw);
  for (const auto& [key, c] : canonical.terms()) {
    lhs[GShape{key.antihol_pole, key.dbar, key.target.family}] += c;
  }
  return finish_b<RationalFunction>(lhs, gg_real_target_symbolic(), p_max,
                                    [](const Polynomial& p) { return RationalFunction(p); });
}

BConstantsReport match_B_constants(const OpeExpansion& target, HalfInt q1, HalfInt q2,
                                   const CouplingRegistry& reg, const SuperCoupling& sc,
                                   int p_max) {
  const auto tmpl = canonicalize(build_g_ope(q1, q2, {}, {}, reg, sc, p_max));
  std::map<GShape, Polynomial> lhs, rhs;
  for (const auto& [key, c] : tmpl.terms()) {
    if (key.hol_pole != 1) continue;
    lhs[GShape{key.antihol_pole, key.dbar, key.target.family}] += c;
  }
  for (const auto& [key, c] : target.terms()) {
    if (key.hol_pole != 1) continue;
    rhs[GShape{key.antihol_pole, key.dbar, key.target.family}] += Polynomial(c);
  }
  return finish_b<Rational>(lhs, rhs, p_max,
                            [](const Polynomial& p) { return p.constant_value(); });
}

std::string to_string(const BilinearKey& k) {
  std::ostringstream os;
  os << "(zb-wb)^-" << k.antihol_pole << " :" << field_text(k.first, k.first_dbar, Polynomial(0))
     << " " << field_text(k.second, k.second_dbar, k.shift) << ":";
  return os.str();
}

std::string to_string(const BilinearCurrent& c) {
  std::ostringstream os;
  os << c.name << " = sum_k";
  bool first = true;
  for (const auto& s : c.summands) {
    os << (first ? " " : " + ") << "(" << s.coeff << ") :"
       << field_text(s.first.kind, s.first.dbar, s.first.shift) << " "
       << field_text(s.second.kind, s.second.dbar, s.second.shift) << ":";
    first = false;
  }
  return os.str();
}

}  // namespace walg
