#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "walg/error.hpp"
#include "walg/freefield.hpp"
#include "walg/io.hpp"
#include "walg/ope.hpp"
#include "walg/spec_parser.hpp"
#include "walg/structure.hpp"
#include "walg/supertwist.hpp"
#include "walg/sweep.hpp"

using namespace walg;

namespace {

struct Output {
  Json json;
  std::string text;
  std::string latex;  // empty: wrap the text in a verbatim block
  int status = 0;
};

struct Globals {
  std::string format = "text";
  std::string registry;
  std::string output;
};

/// Raised for bad argument values that CLI11 cannot see (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

HalfInt half(const std::string& s, const char* what) {
  try {
    return HalfInt::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--") + what + ": " + e.what());
  }
}

GeneratorSpec spec(const std::string& s) {
  try {
    return parse_generator(s);
  } catch (const ParseError& e) {
    throw UsageError("cannot parse generator '" + s + "': " + e.what());
  }
}

CouplingRegistry registry(const Globals& g) {
  std::string path = g.registry;
  if (path.empty()) {
    if (const char* env = std::getenv("WALG_REGISTRY")) path = env;
  }
  if (path.empty()) return CouplingRegistry::unit();
  return load_registry(path);
}

BTable table_for(const std::string& choice, bool tilde) {
  if (choice == "derived") return tilde ? derived_btilde() : derived_b();
  return {};
}

template <class C>
std::string combination_text(const BasicModeCombination<C>& c) {
  std::string out = c.empty() ? "0" : to_string(c);
  for (const auto& d : c.diagnostics()) out += "\n# " + d.code + ": " + d.detail;
  return out;
}

std::string verbatim(const std::string& text) {
  return "\\begin{verbatim}\n" + text + "\n\\end{verbatim}";
}

void emit(const Output& out, const Globals& g) {
  std::string body;
  if (g.format == "json") {
    body = out.json.dump(2);
  } else if (g.format == "latex") {
    body = out.latex.empty() ? verbatim(out.text) : out.latex;
  } else {
    body = out.text;
  }
  if (g.output.empty()) {
    std::cout << body << "\n";
    return;
  }
  std::ofstream f(g.output);
  if (!f) throw DomainError("cannot write '" + g.output + "'");
  f << body << "\n";
}

std::string sweep_text(const SweepResult& r) {
  std::ostringstream os;
  os << "checked " << r.checked << ", failures " << r.failures.size();
  for (const auto& f : r.failures) os << "\n" << f;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walg: structure constants, OPEs and free-field realizations of W~_{1+infinity}"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "latex", "text"}))
      ->capture_default_str();
  app.add_option("--registry", g.registry,
                 "Coupling registry JSON (default: $WALG_REGISTRY, else every kappa = 1)");
  app.add_option("-o,--output", g.output, "Write the result to this file");

  std::function<Output()> action;

  // n-coeff
  auto* ncoeff = app.add_subcommand("n-coeff", "Evaluate N(q1,q2,m,n,p)");
  std::string q1s, q2s, ms, ns, reps = "def";
  int p = 0;
  ncoeff->add_option("--q1", q1s)->required();
  ncoeff->add_option("--q2", q2s)->required();
  ncoeff->add_option("--m", ms)->required();
  ncoeff->add_option("--n", ns)->required();
  ncoeff->add_option("--p", p)->required()->check(CLI::NonNegativeNumber);
  ncoeff->add_option("--rep", reps, "def or lemma")->check(CLI::IsMember({"def", "lemma"}));
  ncoeff->callback([&] {
    action = [&] {
      const Rational v = n_coeff(half(q1s, "q1"), half(q2s, "q2"), half(ms, "m"), half(ns, "n"),
                                 p, reps == "def" ? NRep::def : NRep::lemma);
      return Output{Json{{"N", v.to_string()}}, v.to_string(), latex(v)};
    };
  });

  // bracket
  auto* bracket = app.add_subcommand("bracket", "Bracket of two generator modes");
  std::string a_text, b_text, c_text, b_choice = "symbolic";
  std::optional<int> truncate_p;
  bracket->add_option("a", a_text, "First mode, e.g. 'Wt[q=2,s=2,m=1]'")->required();
  bracket->add_option("b", b_text, "Second mode")->required();
  bracket->add_option("--truncate-p", truncate_p, "Keep grades p <= this");
  bracket->add_option("--b-constants", b_choice, "Fermionic B tables: symbolic or derived")
      ->check(CLI::IsMember({"symbolic", "derived"}));
  bracket->callback([&] {
    action = [&] {
      const GeneratorSpec sa = spec(a_text), sb = spec(b_text);
      const Family fa = sa.label.family, fb = sb.label.family;
      const CouplingRegistry reg = registry(g);
      auto numeric = [](const ModeCombination& c) {
        return Output{to_json(c), combination_text(c), latex(c)};
      };
      auto symbolic = [](const SymbolicModeCombination& c) {
        return Output{to_json(c), combination_text(c), latex(c)};
      };
      if (fa == Family::wtilde && fb == Family::wtilde) {
        return numeric(wtilde_bracket(sa.as_mode(), sb.as_mode(), reg, truncate_p));
      }
      if (fa == Family::h && fb == Family::h) {
        return numeric(soft_bracket(sa.as_mode(), sb.as_mode(), reg, truncate_p));
      }
      if (fa == Family::gminus && fb == Family::gplus) {
        const FermionicMode ga(fa, sa.label.q, sa.as_mode().m);
        const FermionicMode gb(fb, sb.label.q, sb.as_mode().m);
        return symbolic(gg_anticommutator(ga, gb, reg, table_for(b_choice, false),
                                          table_for(b_choice, true)));
      }
      if ((fa == Family::gplus || fa == Family::gminus) && fa == fb) {
        return symbolic(g_pairing_zero(FermionicMode(fa, sa.label.q, sa.as_mode().m),
                                       FermionicMode(fb, sb.label.q, sb.as_mode().m)));
      }
      if (fa == Family::vhat && fb == Family::vhat) {
        return symbolic(vhat_bracket(sa.label.q, sa.as_mode().m, sb.label.q, sb.as_mode().m,
                                     GhatTable{}, truncate_p));
      }
      if (fa == Family::v && fb == Family::v) {
        return numeric(reduced_vv(sa.label.q, sa.as_mode().m, sb.label.q, sb.as_mode().m));
      }
      if (fa == Family::v && fb == Family::ghat) {
        const HalfInt n = sb.as_mode().m - HalfInt::from_doubled(1);
        return numeric(reduced_vg(sa.label.q, sa.as_mode().m, sb.label.q, n));
      }
      throw DomainError("no bracket implemented for " + family_token(fa) + " with " +
                        family_token(fb));
    };
  });

  // ope
  auto* ope = app.add_subcommand("ope", "Canonical singular OPE of two currents");
  std::string kind = "wtilde", s1s = "2", s2s = "2";
  int alpha_max = 4;
  ope->add_option("--kind", kind, "wtilde, soft or g")
      ->check(CLI::IsMember({"wtilde", "soft", "g"}));
  ope->add_option("--q1", q1s, "Weight (k for soft currents)")->required();
  ope->add_option("--q2", q2s)->required();
  ope->add_option("--s1", s1s)->capture_default_str();
  ope->add_option("--s2", s2s)->capture_default_str();
  ope->add_option("--truncate-p", truncate_p);
  ope->add_option("--alpha-max", alpha_max, "Soft OPE: highest dbar order")
      ->check(CLI::NonNegativeNumber);
  ope->add_option("--b-constants", b_choice)->check(CLI::IsMember({"symbolic", "derived"}));
  ope->callback([&] {
    action = [&] {
      const CouplingRegistry reg = registry(g);
      const HalfInt q1 = half(q1s, "q1"), q2 = half(q2s, "q2");
      if (kind == "g") {
        const auto e = canonicalize(build_g_ope(q1, q2, table_for(b_choice, false),
                                                table_for(b_choice, true), reg, {}, truncate_p));
        return Output{to_json(e), to_string(e), latex(e)};
      }
      const HalfInt s1 = half(s1s, "s1"), s2 = half(s2s, "s2");
      const OpeExpansion e =
          kind == "soft" ? build_soft_ope(q1, s1, q2, s2, reg, alpha_max, truncate_p)
                         : canonicalize(build_wtilde_ope(q1, s1, q2, s2, reg, truncate_p));
      return Output{to_json(e), to_string(e), latex(e)};
    };
  });

  // mode-extract
  auto* extract = app.add_subcommand("mode-extract", "Bracket through the OPE and contours");
  std::string rule = "formal";
  extract->add_option("a", a_text)->required();
  extract->add_option("b", b_text)->required();
  extract->add_option("--truncate-p", truncate_p);
  extract->add_option("--rule", rule, "Antiholomorphic contour rule for Wt pairs")
      ->check(CLI::IsMember({"formal", "alternating"}));
  extract->add_option("--alpha-max", alpha_max)->check(CLI::NonNegativeNumber);
  extract->callback([&] {
    action = [&] {
      const GeneratorSpec sa = spec(a_text), sb = spec(b_text);
      const CouplingRegistry reg = registry(g);
      const GeneratorMode a = sa.as_mode(), b = sb.as_mode();
      if (a.label.family == Family::wtilde && b.label.family == Family::wtilde) {
        if (!a.label.s || !b.label.s) throw DomainError("Wt modes need a spin s");
        const auto e = canonicalize(
            build_wtilde_ope(a.label.q, *a.label.s, b.label.q, *b.label.s, reg, truncate_p));
        const auto c = mode_extract(e, a.m, b.m, a.label.q, b.label.q,
                                    rule == "formal" ? ContourRule::formal
                                                     : ContourRule::alternating,
                                    WeightConvention::weight_q);
        return Output{to_json(c), combination_text(c), latex(c)};
      }
      if (a.label.family == Family::h && b.label.family == Family::h) {
        const auto e = build_soft_ope(a.label.q, *a.label.s, b.label.q, *b.label.s, reg,
                                      alpha_max, truncate_p);
        const auto c = mode_extract_soft(e, a, b);
        return Output{to_json(c), combination_text(c), latex(c)};
      }
      throw DomainError("mode-extract handles Wt/Wt and H/H pairs");
    };
  });

  // jacobi
  auto* jac = app.add_subcommand("jacobi", "Jacobi residual of three W~ modes");
  jac->add_option("a", a_text)->required();
  jac->add_option("b", b_text)->required();
  jac->add_option("c", c_text)->required();
  jac->add_option("--truncate-p", truncate_p);
  jac->callback([&] {
    action = [&] {
      const auto r = jacobi_residual(spec(a_text).as_mode(), spec(b_text).as_mode(),
                                     spec(c_text).as_mode(), registry(g), truncate_p);
      return Output{to_json(r), combination_text(r), latex(r)};
    };
  });

  // kappa-check
  auto* kcheck = app.add_subcommand("kappa-check", "Check the four kappa constraints");
  kcheck->callback([&] {
    action = [&] {
      const auto violations = kappa_conditions(registry(g));
      Json j = Json::array();
      std::string text;
      for (const auto& v : violations) {
        j.push_back(to_json(v));
        text += "constraint " + std::to_string(v.index) + " " +
                (v.kind == ViolationKind::violated ? "violated" : "divides by zero") + ": " +
                v.constraint;
        if (v.kind == ViolationKind::violated) {
          text += " (" + v.lhs.to_string() + " != " + v.rhs.to_string() + ")";
        }
        text += "\n";
      }
      if (violations.empty()) text = "all four constraints hold\n";
      text.pop_back();
      return Output{Json{{"violations", j}}, text, "", violations.empty() ? 0 : 1};
    };
  });

  // wick
  auto* wick = app.add_subcommand("wick", "Wick OPE of two bc-ghost currents");
  std::string family = "standard", kappas = "1", as = "0", bs = "1";
  wick->add_option("--q1", q1s)->required();
  wick->add_option("--q2", q2s)->required();
  wick->add_option("--family", family, "standard or shifted")
      ->check(CLI::IsMember({"standard", "shifted"}));
  wick->add_option("--kappa", kappas, "A perfect square")->capture_default_str();
  wick->add_option("--a", as, "Shifted family: constant in the dbar c term");
  wick->add_option("--b", bs, "Shifted family: constant in the dbar b term");
  wick->callback([&] {
    action = [&] {
      const Rational kappa = Rational::parse(kappas);
      const Rational q1 = half(q1s, "q1").to_rational(), q2 = half(q2s, "q2").to_rational();
      WickOpe r;
      if (family == "standard") {
        r = wick_ope(make_w_current(q1, kappa), make_w_current(q2, kappa), w_family(kappa));
      } else {
        const Rational a = Rational::parse(as), b = Rational::parse(bs);
        r = wick_ope(make_shifted_w_current(q1, kappa, a, b),
                     make_shifted_w_current(q2, kappa, a, b), shifted_w_family(kappa, a, b));
      }
      std::string text = r.expansion.empty() ? "0" : to_string(r.expansion);
      for (const auto& d : r.diagnostics) text += "\n# " + d.code + ": " + d.detail;
      return Output{to_json(r), text, latex(r.expansion)};
    };
  });

  // solve-alpha
  auto* salpha = app.add_subcommand("solve-alpha", "Solve for realization coefficients");
  SolveAlphaOptions aopts;
  std::string seed = "standard";
  salpha->add_option("--seed", seed, "standard or shifted")
      ->check(CLI::IsMember({"standard", "shifted"}));
  salpha->add_option("--order-max", aopts.order_max)->check(CLI::Range(1, 6));
  salpha->add_option("--target-p", aopts.target_p, "Grades of the target template");
  salpha->add_option("--q-degree", aopts.q_degree)->check(CLI::NonNegativeNumber);
  salpha->add_option("--k-degree", aopts.k_degree)->check(CLI::NonNegativeNumber);
  salpha->callback([&] {
    action = [&] {
      aopts.seed = seed == "standard" ? AlphaSeed::standard : AlphaSeed::shifted;
      const auto r = solve_alpha(aopts);
      std::ostringstream os;
      os << (r.consistent ? "consistent" : "inconsistent");
      if (r.first_failure) {
        os << "\nfirst failure at level " << r.first_failure->level << ": "
           << r.first_failure->group << " [" << r.first_failure->monomial
           << "] residual " << r.first_failure->residual;
      }
      for (const auto& [k, v] : r.alpha) os << "\nalpha[" << k << "] = " << v;
      for (const auto& [l, z] : r.level_residual_zero) {
        os << "\nlevel " << l << " residual " << (z ? "zero" : "nonzero");
      }
      return Output{to_json(r), os.str(), ""};
    };
  });

  // match-b
  auto* matchb = app.add_subcommand("match-b", "Recover the fermionic B constants");
  int p_max = 1;
  matchb->add_option("--q1", q1s, "Concrete weight (omit for the symbolic route)");
  matchb->add_option("--q2", q2s);
  matchb->add_option("--p-max", p_max)->check(CLI::NonNegativeNumber);
  matchb->callback([&] {
    action = [&] {
      BConstantsReport r;
      if (q1s.empty() != q2s.empty()) throw UsageError("give both --q1 and --q2, or neither");
      if (q1s.empty()) {
        r = match_B_constants_symbolic(p_max);
      } else {
        const CouplingRegistry reg = registry(g);
        const SuperCoupling sc;
        const HalfInt q1 = half(q1s, "q1"), q2 = half(q2s, "q2");
        r = match_B_constants(gg_real_target(q1, q2, reg.lookup(sc.key(0))), q1, q2, reg, sc,
                              p_max);
      }
      std::ostringstream os;
      os << (r.consistent ? "consistent" : "inconsistent");
      if (r.first_failure) os << "\nfirst failure: " << *r.first_failure;
      for (const auto& [k, v] : r.values) os << "\n" << k << " = " << v;
      for (const auto& f : r.free_unknowns) os << "\n" << f << " free";
      return Output{to_json(r), os.str(), ""};
    };
  });

  // twist
  auto* twist = app.add_subcommand("twist", "BRST charge, topological generators and limits");
  std::string what = "brst", which = "vv", qs = "2";
  twist->add_option("--what", what, "brst, vhat, variation or rescale")
      ->check(CLI::IsMember({"brst", "vhat", "variation", "rescale"}));
  twist->add_option("--q", qs, "Weight for vhat / variation");
  twist->add_option("--r", ms, "G- mode for variation");
  twist->add_option("--q1", q1s);
  twist->add_option("--q2", q2s);
  twist->add_option("--m", ms);
  twist->add_option("--n", ns);
  twist->add_option("--bracket", which, "vv or vg")->check(CLI::IsMember({"vv", "vg"}));
  twist->add_option("--b-constants", b_choice)->check(CLI::IsMember({"symbolic", "derived"}));
  twist->callback([&] {
    action = [&]() -> Output {
      if (what == "brst") {
        const auto q = brst().mode();
        const GeneratorSpec s{q.label(), q.r()};
        const auto picked = brst_contour_selection(HalfInt::from_doubled(7));
        std::string text = print_generator(s) + "\ncontour selects r =";
        Json sel = Json::array();
        for (auto r : picked) {
          text += " " + r.to_string();
          sel.push_back(r.to_string());
        }
        return Output{Json{{"brst", print_generator(s)}, {"contour_selection", sel}}, text,
                      latex(q.mode())};
      }
      if (what == "vhat") {
        const auto v = vhat_expression(half(qs, "q"), table_for(b_choice, false),
                                       table_for(b_choice, true), registry(g));
        std::string text = to_string(v.generator) + "\n# template origins (p,x):";
        for (const auto& [pp, x] : v.origins) {
          text += " (" + std::to_string(pp) + "," + std::to_string(x) + ")";
        }
        text += "\n# off-diagonal remnants: " + std::to_string(v.off_diagonal_remnants);
        return Output{to_json(v), text, latex(v.generator)};
      }
      if (what == "variation") {
        if (ms.empty()) throw UsageError("--r is required for --what variation");
        const auto r =
            brst_variation_of_vhat(FermionicMode(Family::gminus, half(qs, "q"), half(ms, "r")));
        return Output{to_json(r), combination_text(r), latex(r)};
      }
      if (q1s.empty() || q2s.empty() || ms.empty() || ns.empty()) {
        throw UsageError("--what rescale needs --q1 --q2 --m --n");
      }
      const auto r = rescale_limit(which == "vv" ? RescaledBracket::vv : RescaledBracket::vg,
                                   half(q1s, "q1"), half(ms, "m"), half(q2s, "q2"),
                                   half(ns, "n"), GhatTable{});
      std::ostringstream os;
      for (const auto& t : r.terms) {
        os << "p=" << t.p << " lambda^" << t.lambda_power << " " << to_string(t.status) << ": ("
           << t.coeff << ") " << to_string(t.target) << "\n";
      }
      os << "reduced: " << combination_text(r.reduced);
      if (r.divergent) os << "\n# divergent unless the lambda^-1 coefficient vanishes";
      return Output{to_json(r), os.str(), latex(r.reduced)};
    };
  });

  // table
  auto* table = app.add_subcommand("table", "Exhaustive tables and sweeps");
  std::string tkind = "n", q_max = "4";
  bool serial_only = false;
  int table_p_max = 8;
  table->add_option("--kind", tkind)
      ->check(CLI::IsMember({"n", "representation", "parity", "closed-form", "roundtrip",
                             "jacobi", "reduced-limit", "reduced-jacobi"}));
  table->add_option("--q-max", q_max)->capture_default_str();
  table->add_option("--p-max", table_p_max)->check(CLI::NonNegativeNumber);
  table->add_option("--truncate-p", truncate_p);
  table->add_flag("--serial", serial_only, "Use the serial reference kernels");
  table->callback([&] {
    action = [&]() -> Output {
      const SweepRange range{HalfInt(1), half(q_max, "q-max"), table_p_max};
      if (tkind == "n") {
        const auto rows = serial_only ? serial::n_table(range) : parallel::n_table(range);
        std::ostringstream os;
        os << "q1\tq2\tm\tn\tp\tN";
        for (const auto& r : rows) {
          os << "\n" << r.q1 << "\t" << r.q2 << "\t" << r.m << "\t" << r.n << "\t" << r.p << "\t"
             << r.value;
        }
        return Output{to_json(rows), os.str(), ""};
      }
      SweepResult r;
      const HalfInt qm = range.q_max;
      if (tkind == "representation") {
        r = serial_only ? serial::representation_sweep(range)
                        : parallel::representation_sweep(range);
      } else if (tkind == "parity") {
        r = serial_only ? serial::parity_sweep(range) : parallel::parity_sweep(range);
      } else if (tkind == "closed-form") {
        r = serial_only ? serial::closed_form_sweep(range) : parallel::closed_form_sweep(range);
      } else if (tkind == "roundtrip") {
        const auto reg = registry(g);
        r = serial_only ? serial::roundtrip_sweep(qm, 2, reg)
                        : parallel::roundtrip_sweep(qm, 2, reg);
      } else if (tkind == "jacobi") {
        JacobiSweepOptions o;
        o.q_max = qm;
        if (truncate_p) o.truncate_p = truncate_p;
        const auto reg = registry(g);
        r = serial_only ? serial::jacobi_sweep(o, reg) : parallel::jacobi_sweep(o, reg);
      } else if (tkind == "reduced-limit") {
        r = serial_only ? serial::reduced_limit_sweep(qm) : parallel::reduced_limit_sweep(qm);
      } else {
        r = serial_only ? serial::reduced_jacobi_sweep(qm) : parallel::reduced_jacobi_sweep(qm);
      }
      return Output{to_json(r), sweep_text(r), "", r.ok() ? 0 : 1};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Output out = action();
    emit(out, g);
    return out.status;
  } catch (const UsageError& e) {
    std::cerr << Json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << Json{{"error", "parse"}, {"message", e.what()}, {"line", e.line()},
                      {"column", e.column()}}
                     .dump()
              << "\n";
    return 1;
  } catch (const SchemaError& e) {
    std::cerr << Json{{"error", "schema"}, {"message", e.what()}, {"pointer", e.pointer()}}.dump()
              << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << Json{{"error", "domain"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}
