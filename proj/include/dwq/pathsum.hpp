// Copyright 2026 The dwq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef DWQ_PATHSUM_HPP
#define DWQ_PATHSUM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dwq/linalg.hpp"
#include "dwq/quantization.hpp"

namespace dwq {

// Conventions used throughout this module.
//
// A sequence of steps S_1 ... S_N (steps[0] is S_1) composes to the
// time-ordered propagator S_N ... S_1: the first step acts first. A path runs
// from the initial coordinate q_0 (ket) to the final coordinate q_N (bra),
// with momentum p_k on the segment q_k -> q_{k+1}. The left-ordered kernel
//
//   <q_{k+1}|S|q_k> = (1/n) sum_p e^{2 pi i p (q_{k+1} - q_k)/n} S(p, q_k)
//
// gives each segment the phase (2 pi/n) p_k (q_{k+1} - q_k) - H(p_k, q_k) dt,
// so the action orientation sign is +1.

/// Orientation sign of the kinetic term in the discrete action.
inline constexpr int kActionOrientation = +1;

class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t required) : Error(what), required_(required) {}
  /// Terms the request would need; UINT64_MAX when that overflows.
  std::uint64_t required_terms() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

/// One discrete phase-space trajectory: N+1 coordinates and N momenta.
struct PhasePath {
  std::size_t n = 1;
  std::vector<std::size_t> q;
  std::vector<std::size_t> p;

  std::size_t segments() const noexcept { return p.size(); }
  /// Throws DimensionError unless q.size() == p.size() + 1, p nonempty and
  /// every entry lies in [0, n).
  void validate() const;
};

/// A piecewise-constant Hamiltonian segment: real symbol H(p, q) held for dt.
struct StepSpec {
  Symbol hamiltonian;
  double dt = 0.0;
};

enum class PathSumMode { kApproxFirstOrder, kExactEffective };

struct PathSumConfig {
  PathSumMode mode = PathSumMode::kApproxFirstOrder;
  /// Symbol values with |S| <= zero_eps * max|S| are absent.
  double zero_eps = 1e-12;
  std::uint64_t max_terms = 10'000'000;
  /// Enumerate only momenta where each step's symbol is present. For symbols
  /// of the form s(q) delta_{pq} this removes the momentum sums entirely.
  bool collapse_momenta = false;
  /// Worker threads for enumeration; 0 picks the hardware concurrency. The
  /// result does not depend on this value.
  unsigned workers = 0;

  void validate() const;
};

/// e^{-i H dt} applied pointwise and quantized with left ordering.
CMatrix step_operator_approx(const StepSpec& s);

/// exp(-i dt quantize(H, left)). Uses the general exponential, so it is
/// defined even when the quantized Hamiltonian is not Hermitian.
CMatrix step_operator_exact(const StepSpec& s);

/// H'(p, q) = i Log S(p, q) / dt for S = dequantize_l(step), principal branch.
/// Lattice points where |S| <= zero_eps * max|S| carry no value.
struct EffectiveHamiltonian {
  std::size_t n = 1;
  double dt = 0.0;
  std::vector<std::optional<Complex>> values;

  const std::optional<Complex>& at(std::size_t p, std::size_t q) const { return values[p * n + q]; }
  bool absent(std::size_t p, std::size_t q) const { return !at(p, q).has_value(); }
  std::size_t absent_count() const;
};

EffectiveHamiltonian effective_hamiltonian(const CMatrix& step, double dt, double zero_eps = 1e-12);

/// e^{-i H' dt} pointwise; absent points map to 0.
Symbol effective_step_symbol(const EffectiveHamiltonian& h);

/// sum_k [ (2 pi/n) p_k (q_{k+1} - q_k mod n) - H(p_k, q_k) dt ], with the
/// coordinate difference taken in [0, n).
double discrete_action(const PhasePath& path, const Symbol& h, double dt);

/// n^{2N-1}, saturating at UINT64_MAX.
std::uint64_t path_term_count(std::size_t n, std::size_t segments);

struct PathSumResult {
  Complex amplitude;
  /// Terms whose amplitude was evaluated.
  std::uint64_t terms_visited = 0;
  /// Terms passing through an absent symbol value. In full enumeration these
  /// are visited and contribute zero; with collapse_momenta they are skipped.
  std::uint64_t terms_omitted = 0;
};

/// <q_end| S_N ... S_1 |q_start> as an explicit sum over all phase-space
/// paths. Approximate mode uses e^{i A} with A from discrete_action; exact
/// mode uses the exact step symbols S_k = dequantize_l(step_operator_exact).
PathSumResult pathsum_bruteforce(std::span<const StepSpec> steps, std::size_t q_start, std::size_t q_end,
                                 const PathSumConfig& cfg);

/// Exact path sum for explicitly given step operators (cfg.mode is ignored).
PathSumResult pathsum_bruteforce_operators(std::span<const CMatrix> step_ops, std::size_t q_start,
                                           std::size_t q_end, const PathSumConfig& cfg);

/// S_N ... S_1 with S_k = step_operator_approx or step_operator_exact by mode.
CMatrix pathsum_contract(std::span<const StepSpec> steps, const PathSumConfig& cfg);

/// S_N ... S_1 for explicit operators.
CMatrix contract_operators(std::span<const CMatrix> step_ops);

/// Visits every path from q_start to q_end in lexicographic order of
/// (q_1, p_0, q_2, p_1, ...), passing the path, the real action in radians and
/// the term's amplitude. Paths through absent points are skipped.
using PathVisitor = std::function<void(const PhasePath&, double action, Complex amplitude)>;
void for_each_path(std::span<const StepSpec> steps, std::size_t q_start, std::size_t q_end,
                   const PathSumConfig& cfg, const PathVisitor& visit);

struct ConvergencePoint {
  std::size_t steps = 0;
  double dt = 0.0;
  double error = 0.0;
};

/// Trotter error of N first-order steps against exp(-i T quantize(h)) for each
/// N in n_steps. Throws HermiticityError when the quantized Hamiltonian has
/// ||H - H^dagger||_F > 1e-8.
std::vector<ConvergencePoint> convergence_order(const Symbol& h, double total_time,
                                                std::span<const std::size_t> n_steps);

}  // namespace dwq

#endif  // DWQ_PATHSUM_HPP
