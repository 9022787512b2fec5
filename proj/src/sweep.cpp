#include "walg/sweep.hpp"

#include <exception>
#include <sstream>

#include "walg/ope.hpp"
#include "walg/structure.hpp"
#include "walg/supertwist.hpp"

#if WALG_HAVE_OPENMP
#include <omp.h>
#endif

namespace walg {

namespace {

struct SerialExec {
  template <class F>
  static void run(std::size_t count, F&& f) {
    for (std::size_t i = 0; i < count; ++i) f(i);
  }
};

struct ParallelExec {
  template <class F>
  static void run(std::size_t count, F&& f) {
#if WALG_HAVE_OPENMP
    std::vector<std::exception_ptr> errors(count);
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
#else
    SerialExec::run(count, f);
#endif
  }
};

struct ModePair {
  HalfInt q1, q2, m, n;
};

std::vector<ModePair> mode_pairs(HalfInt q_min, HalfInt q_max) {
  std::vector<ModePair> out;
  const auto grid = weight_grid(q_min, q_max);
  for (auto q1 : grid) {
    for (auto q2 : grid) {
      for (auto m : wedge_modes(q1)) {
        for (auto n : wedge_modes(q2)) out.push_back({q1, q2, m, n});
      }
    }
  }
  return out;
}

std::string describe(const ModePair& c, int p) {
  std::ostringstream os;
  os << "q1=" << c.q1 << " q2=" << c.q2 << " m=" << c.m << " n=" << c.n;
  if (p >= 0) os << " p=" << p;
  return os.str();
}

/// Runs `check(item, failures)` for every item and concatenates the
/// per-item failure lists in item order.
template <class Exec, class Item, class Check>
SweepResult run_checks(const std::vector<Item>& items, std::size_t per_item, Check check) {
  std::vector<std::vector<std::string>> slots(items.size());
  Exec::run(items.size(), [&](std::size_t i) { check(items[i], slots[i]); });
  SweepResult out;
  out.checked = items.size() * per_item;
  for (auto& s : slots) {
    for (auto& f : s) out.failures.push_back(std::move(f));
  }
  return out;
}

template <class Exec>
SweepResult representation_sweep_impl(const SweepRange& r) {
  return run_checks<Exec>(mode_pairs(r.q_min, r.q_max), static_cast<std::size_t>(r.p_max + 1),
                          [&](const ModePair& c, std::vector<std::string>& fail) {
                            for (int p = 0; p <= r.p_max; ++p) {
                              const Rational a = n_coeff(c.q1, c.q2, c.m, c.n, p, NRep::def);
                              const Rational b = n_coeff(c.q1, c.q2, c.m, c.n, p, NRep::lemma);
                              if (a != b) {
                                fail.push_back(describe(c, p) + ": def " + a.to_string() +
                                               " lemma " + b.to_string());
                              }
                            }
                          });
}

template <class Exec>
SweepResult parity_sweep_impl(const SweepRange& r) {
  return run_checks<Exec>(mode_pairs(r.q_min, r.q_max), static_cast<std::size_t>(r.p_max + 1),
                          [&](const ModePair& c, std::vector<std::string>& fail) {
                            for (int p = 0; p <= r.p_max; ++p) {
                              const Rational a = n_coeff(c.q2, c.q1, c.n, c.m, p);
                              const Rational b = sign_power(p) * n_coeff(c.q1, c.q2, c.m, c.n, p);
                              if (a != b) {
                                fail.push_back(describe(c, p) + ": swapped " + a.to_string() +
                                               " expected " + b.to_string());
                              }
                            }
                          });
}

template <class Exec>
SweepResult closed_form_sweep_impl(const SweepRange& r) {
  return run_checks<Exec>(
      mode_pairs(r.q_min, r.q_max), 2, [&](const ModePair& c, std::vector<std::string>& fail) {
        const Rational one(1);
        const Rational n0 = n_coeff(c.q1, c.q2, c.m, c.n, 0);
        if (n0 != one) fail.push_back(describe(c, 0) + ": " + n0.to_string());
        const Rational n1 = n_coeff(c.q1, c.q2, c.m, c.n, 1);
        const Rational want = Rational(2) * (c.n.to_rational() * (c.q1.to_rational() - one) -
                                             c.m.to_rational() * (c.q2.to_rational() - one));
        if (n1 != want) {
          fail.push_back(describe(c, 1) + ": " + n1.to_string() + " expected " + want.to_string());
        }
      });
}

template <class Exec>
SweepResult roundtrip_sweep_impl(HalfInt q_max, HalfInt s, const CouplingRegistry& reg) {
  const auto grid = weight_grid(1, q_max);
  std::vector<std::pair<HalfInt, HalfInt>> labels;
  std::size_t total = 0;
  for (auto q1 : grid) {
    for (auto q2 : grid) {
      labels.emplace_back(q1, q2);
      total += wedge_modes(q1).size() * wedge_modes(q2).size();
    }
  }
  auto out = run_checks<Exec>(
      labels, 0, [&](const std::pair<HalfInt, HalfInt>& l, std::vector<std::string>& fail) {
        const auto [q1, q2] = l;
        const auto e = canonicalize(build_wtilde_ope(q1, s, q2, s, reg));
        for (auto m : wedge_modes(q1)) {
          for (auto n : wedge_modes(q2)) {
            const auto a = mode_extract(e, m, n, q1, q2);
            const auto b = wtilde_bracket(wtilde_mode(q1, s, m), wtilde_mode(q2, s, n), reg);
            if (!(a == b)) {
              fail.push_back(describe({q1, q2, m, n}, -1) + ": extracted " + to_string(a) +
                             " bracket " + to_string(b));
            }
          }
        }
      });
  out.checked = total;
  return out;
}

std::vector<GeneratorMode> all_modes(HalfInt q_min, HalfInt q_max, Family family,
                                     std::optional<HalfInt> s) {
  std::vector<GeneratorMode> out;
  for (auto q : weight_grid(q_min, q_max)) {
    for (auto m : wedge_modes(q)) out.push_back(GeneratorMode{GeneratorLabel{family, q, s}, m});
  }
  return out;
}

template <class Exec>
SweepResult jacobi_sweep_impl(const JacobiSweepOptions& o, const CouplingRegistry& reg) {
  const auto modes = all_modes(o.q_min, o.q_max, Family::wtilde, o.s);
  auto out = run_checks<Exec>(modes, modes.size() * modes.size(),
                              [&](const GeneratorMode& a, std::vector<std::string>& fail) {
                                for (const auto& b : modes) {
                                  for (const auto& c : modes) {
                                    const auto r = jacobi_residual(a, b, c, reg, o.truncate_p);
                                    if (!r.empty()) {
                                      fail.push_back(to_string(a) + " " + to_string(b) + " " +
                                                     to_string(c) + ": " + to_string(r));
                                    }
                                  }
                                }
                              });
  return out;
}

template <class Exec>
SweepResult reduced_limit_sweep_impl(HalfInt q_max) {
  const CouplingRegistry unit = CouplingRegistry::unit();
  const HalfInt s(2);
  return run_checks<Exec>(
      mode_pairs(1, q_max), 1, [&](const ModePair& c, std::vector<std::string>& fail) {
        const auto wt =
            wtilde_bracket(wtilde_mode(c.q1, s, c.m), wtilde_mode(c.q2, s, c.n), unit, 1);
        const auto vh = vhat_bracket(c.q1, c.m, c.q2, c.n, GhatTable{}, 1);
        ModeCombination from_w;
        for (const auto& [mode, coeff] : wt.terms()) {
          from_w.add(GeneratorMode{GeneratorLabel{Family::vhat, mode.label.q, std::nullopt},
                                   mode.m},
                     coeff);
        }
        ModeCombination from_v;
        const HalfInt q3 = c.q1 + c.q2 - HalfInt(2);
        for (const auto& [mode, coeff] : vh.terms()) {
          if (mode.label.q != q3) continue;  // the p = 1 grade only
          from_v.add(mode, coeff.constant_value());
        }
        if (!(from_w == from_v)) {
          fail.push_back(describe(c, 1) + ": wtilde " + to_string(from_w) + " vhat " +
                         to_string(from_v));
        }
      });
}

template <class Exec>
SweepResult reduced_jacobi_sweep_impl(HalfInt q_max) {
  const auto modes = all_modes(1, q_max, Family::v, std::nullopt);
  return run_checks<Exec>(modes, modes.size() * modes.size(),
                          [&](const GeneratorMode& a, std::vector<std::string>& fail) {
                            for (const auto& b : modes) {
                              for (const auto& c : modes) {
                                const auto r = reduced_jacobi_residual(a, b, c);
                                if (!r.empty()) {
                                  fail.push_back(to_string(a) + " " + to_string(b) + " " +
                                                 to_string(c) + ": " + to_string(r));
                                }
                              }
                            }
                          });
}

template <class Exec>
std::vector<NTableRow> n_table_impl(const SweepRange& r) {
  const auto pairs = mode_pairs(r.q_min, r.q_max);
  const std::size_t per = static_cast<std::size_t>(r.p_max + 1);
  std::vector<NTableRow> rows(pairs.size() * per);
  Exec::run(pairs.size(), [&](std::size_t i) {
    const auto& c = pairs[i];
    for (int p = 0; p <= r.p_max; ++p) {
      rows[i * per + static_cast<std::size_t>(p)] =
          NTableRow{c.q1, c.q2, c.m, c.n, p, n_coeff(c.q1, c.q2, c.m, c.n, p)};
    }
  });
  return rows;
}

}  // namespace

#define WALG_DEFINE_KERNELS(NS, EXEC)                                                      \
  namespace NS {                                                                           \
  SweepResult representation_sweep(const SweepRange& r) {                                  \
    return representation_sweep_impl<EXEC>(r);                                             \
  }                                                                                        \
  SweepResult parity_sweep(const SweepRange& r) { return parity_sweep_impl<EXEC>(r); }     \
  SweepResult closed_form_sweep(const SweepRange& r) {                                     \
    return closed_form_sweep_impl<EXEC>(r);                                                \
  }                                                                                        \
  SweepResult roundtrip_sweep(HalfInt q_max, HalfInt s, const CouplingRegistry& reg) {     \
    return roundtrip_sweep_impl<EXEC>(q_max, s, reg);                                      \
  }                                                                                        \
  SweepResult jacobi_sweep(const JacobiSweepOptions& o, const CouplingRegistry& reg) {     \
    return jacobi_sweep_impl<EXEC>(o, reg);                                                \
  }                                                                                        \
  SweepResult reduced_limit_sweep(HalfInt q_max) {                                         \
    return reduced_limit_sweep_impl<EXEC>(q_max);                                          \
  }                                                                                        \
  SweepResult reduced_jacobi_sweep(HalfInt q_max) {                                        \
    return reduced_jacobi_sweep_impl<EXEC>(q_max);                                         \
  }                                                                                        \
  std::vector<NTableRow> n_table(const SweepRange& r) { return n_table_impl<EXEC>(r); }    \
  }

WALG_DEFINE_KERNELS(serial, SerialExec)
WALG_DEFINE_KERNELS(parallel, ParallelExec)

#undef WALG_DEFINE_KERNELS

int parallel::max_threads() {
#if WALG_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace walg
