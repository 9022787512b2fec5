#ifndef WALG_SWEEP_HPP
#define WALG_SWEEP_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "walg/arith.hpp"
#include "walg/coupling.hpp"
#include "walg/generator.hpp"

namespace walg {

/// Weights q_min, q_min + 1/2, ..., q_max; every pair of wedge modes.
struct SweepRange {
  HalfInt q_min = 1;
  HalfInt q_max = 5;
  int p_max = 8;
};

struct SweepResult {
  std::size_t checked = 0;
  /// Human-readable description of every failing case, in sweep order.
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

struct NTableRow {
  HalfInt q1, q2, m, n;
  int p = 0;
  Rational value;
  friend bool operator==(const NTableRow&, const NTableRow&) = default;
};

struct JacobiSweepOptions {
  HalfInt q_min = 1;
  HalfInt q_max = 4;
  HalfInt s = 2;
  std::optional<int> truncate_p = 1;
};

/// Every kernel exists in a serial reference form and an OpenMP form with
/// identical, order-stable output.
#define WALG_SWEEP_KERNELS                                                               \
  SweepResult representation_sweep(const SweepRange& r);                                  \
  SweepResult parity_sweep(const SweepRange& r);                                          \
  SweepResult closed_form_sweep(const SweepRange& r);                                     \
  SweepResult roundtrip_sweep(HalfInt q_max, HalfInt s, const CouplingRegistry& reg);     \
  SweepResult jacobi_sweep(const JacobiSweepOptions& o, const CouplingRegistry& reg);     \
  SweepResult reduced_limit_sweep(HalfInt q_max);                                         \
  SweepResult reduced_jacobi_sweep(HalfInt q_max);                                        \
  std::vector<NTableRow> n_table(const SweepRange& r);

namespace serial {
WALG_SWEEP_KERNELS
}  // namespace serial

namespace parallel {
WALG_SWEEP_KERNELS
/// Threads OpenMP would use; 1 when built without OpenMP.
int max_threads();
}  // namespace parallel

#undef WALG_SWEEP_KERNELS

}  // namespace walg

#endif  // WALG_SWEEP_HPP
