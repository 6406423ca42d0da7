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


#include "dwq/pathsum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace dwq {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return (a > kSaturated - b) ? kSaturated : a + b; }

std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

void require_real(const StepSpec& s) {
  if (max_imag(s.hamiltonian) > 1e-12) throw Error("step Hamiltonian must be real-valued");
  if (!std::isfinite(s.dt)) throw Error("step dt must be finite");
}

// Per-step segment weights w(p, q) = S(p, q)/n with a presence mask, plus the
// list of present momenta for every coordinate.
struct StepWeights {
  std::size_t n = 1;
  std::vector<Complex> w;
  std::vector<char> present;
  std::vector<std::vector<std::size_t>> support;
  // Only meaningful for approximate steps, where w = e^{-i H dt}/n.
  std::vector<double> energy_dt;

  Complex weight(std::size_t p, std::size_t q) const { return w[p * n + q]; }
  bool is_present(std::size_t p, std::size_t q) const { return present[p * n + q] != 0; }
};

void fill_support(StepWeights& sw) {
  sw.support.assign(sw.n, {});
  for (std::size_t q = 0; q < sw.n; ++q)
    for (std::size_t p = 0; p < sw.n; ++p)
      if (sw.is_present(p, q)) sw.support[q].push_back(p);
}

StepWeights approx_weights(const StepSpec& s) {
  require_real(s);
  const std::size_t n = s.hamiltonian.n();
  StepWeights sw;
  sw.n = n;
  sw.w.resize(n * n);
  sw.present.assign(n * n, 1);
  sw.energy_dt.resize(n * n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const double phase = s.hamiltonian(p, q).real() * s.dt;
      sw.energy_dt[p * n + q] = phase;
      sw.w[p * n + q] = std::polar(inv_n, -phase);
    }
  fill_support(sw);
  return sw;
}

StepWeights exact_weights(const CMatrix& step, double zero_eps) {
  const Symbol s = dequantize_l(step);
  const std::size_t n = s.n();
  double max_abs = 0.0;
  for (const Complex& z : s.values()) max_abs = std::max(max_abs, std::abs(z));
  const double cut = zero_eps * max_abs;
  StepWeights sw;
  sw.n = n;
  sw.w.resize(n * n);
  sw.present.assign(n * n, 0);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const Complex v = s(p, q);
      if (max_abs > 0.0 && std::abs(v) > cut) {
        sw.present[p * n + q] = 1;
        sw.w[p * n + q] = inv_n * v;
      }
    }
  fill_support(sw);
  return sw;
}

std::vector<StepWeights> weights_for(std::span<const StepSpec> steps, const PathSumConfig& cfg) {
  std::vector<StepWeights> out;
  out.reserve(steps.size());
  for (const StepSpec& s : steps) {
    if (cfg.mode == PathSumMode::kApproxFirstOrder) {
      out.push_back(approx_weights(s));
    } else {
      require_real(s);
      out.push_back(exact_weights(step_operator_exact(s), cfg.zero_eps));
    }
  }
  return out;
}

std::size_t common_dimension(std::span<const StepWeights> weights) {
  if (weights.empty()) throw DimensionError("path sum needs at least one step");
  const std::size_t n = weights.front().n;
  for (const StepWeights& w : weights)
    if (w.n != n) throw DimensionError("path sum steps have different dimensions");
  return n;
}

// Number of terms the collapsed enumeration evaluates for one matrix element.
std::uint64_t collapsed_term_count(std::span<const StepWeights> weights, std::size_t q_start) {
  const std::size_t n = weights.front().n;
  const std::size_t segments = weights.size();
  // below[q]: terms from segment k onwards given q_k = q.
  std::vector<std::uint64_t> below(n, 1);
  for (std::size_t k = segments; k-- > 0;) {
    std::uint64_t tail = 0;
    if (k + 1 < segments) {
      for (std::uint64_t c : below) tail = sat_add(tail, c);
    } else {
      tail = 1;
    }
    std::vector<std::uint64_t> next(n);
    for (std::size_t q = 0; q < n; ++q) next[q] = sat_mul(weights[k].support[q].size(), tail);
    below = std::move(next);
  }
  return below[q_start];
}

class Enumerator {
 public:
  Enumerator(std::span<const StepWeights> weights, std::size_t q_start, std::size_t q_end, bool collapse)
      : weights_(weights),
        n_(weights.front().n),
        segments_(weights.size()),
        q_start_(q_start),
        q_end_(q_end),
        collapse_(collapse) {
    const auto nn = static_cast<long long>(n_);
    roots_.resize(n_);
    for (std::size_t m = 0; m < n_; ++m) roots_[m] = root_of_unity(static_cast<long long>(m), nn);
    // Last segment: w(p, q) e^{2 pi i p (q_end - q)/n}, one row per q.
    const StepWeights& wl = weights_.back();
    last_.resize(n_ * n_);
    for (std::size_t q = 0; q < n_; ++q)
      for (std::size_t p = 0; p < n_; ++p) last_[q * n_ + p] = wl.weight(p, q) * phase(p, q, q_end_);
    // Partitions are the (p_0, q_1) prefixes in ascending order.
    const std::size_t q1_count = segments_ > 1 ? n_ : 1;
    for (std::size_t p0 : momenta(0, q_start_))
      for (std::size_t q1 = 0; q1 < q1_count; ++q1) partitions_.push_back({p0, segments_ > 1 ? q1 : q_end_});
  }

  std::size_t partition_count() const { return partitions_.size(); }

  struct Partial {
    Complex sum;
    std::uint64_t visited = 0;
    std::uint64_t omitted = 0;
  };

  Partial run(std::size_t index) const {
    Partial acc;
    const auto [p0, q1] = partitions_[index];
    const StepWeights& w0 = weights_[0];
    const bool absent = !w0.is_present(p0, q_start_);
    const Complex factor = w0.weight(p0, q_start_) * phase(p0, q_start_, q1);
    if (segments_ == 1) {
      acc.sum += factor;
      acc.visited += 1;
      acc.omitted += absent ? 1 : 0;
    } else {
      descend(1, q1, factor, absent, acc);
    }
    return acc;
  }

 private:
  Complex phase(std::size_t p, std::size_t from, std::size_t to) const {
    return roots_[(p * ((to + n_ - from) % n_)) % n_];
  }

  // Plain product; skips the inf/nan recovery of the library operator.
  static Complex mul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
  }

  std::span<const std::size_t> momenta(std::size_t k, std::size_t q) const {
    if (collapse_) return weights_[k].support[q];
    if (all_.size() != n_) {
      all_.resize(n_);
      for (std::size_t p = 0; p < n_; ++p) all_[p] = p;
    }
    return all_;
  }

  void descend(std::size_t k, std::size_t q, Complex prefix, bool absent, Partial& acc) const {
    const StepWeights& wk = weights_[k];
    if (k + 1 == segments_) {
      double re = 0.0, im = 0.0;
      const std::span<const std::size_t> ps = momenta(k, q);
      const Complex* row = &last_[q * n_];
      if (!collapse_) {
        for (std::size_t p = 0; p < n_; ++p) {
          const Complex t = mul(prefix, row[p]);
          re += t.real();
          im += t.imag();
        }
      } else {
        for (std::size_t p : ps) {
          const Complex t = mul(prefix, row[p]);
          re += t.real();
          im += t.imag();
        }
      }
      acc.sum += Complex{re, im};
      acc.visited += ps.size();
      if (absent) acc.omitted += ps.size();
      else acc.omitted += ps.size() - wk.support[q].size();
      return;
    }
    for (std::size_t p : momenta(k, q)) {
      const Complex wp = mul(prefix, wk.weight(p, q));
      const bool a = absent || !wk.is_present(p, q);
      std::size_t idx = (n_ - (p * q) % n_) % n_;  // p * (next - q) mod n at next = 0
      for (std::size_t next = 0; next < n_; ++next) {
        descend(k + 1, next, mul(wp, roots_[idx]), a, acc);
        idx += p;
        if (idx >= n_) idx -= n_;
      }
    }
  }

  std::span<const StepWeights> weights_;
  std::size_t n_;
  std::size_t segments_;
  std::size_t q_start_;
  std::size_t q_end_;
  bool collapse_;
  std::vector<Complex> roots_;
  std::vector<Complex> last_;
  std::vector<std::pair<std::size_t, std::size_t>> partitions_;
  mutable std::vector<std::size_t> all_;
};

PathSumResult enumerate(std::span<const StepWeights> weights, std::size_t q_start, std::size_t q_end,
                        const PathSumConfig& cfg) {
  cfg.validate();
  const std::size_t n = common_dimension(weights);
  if (q_start >= n || q_end >= n) {
    std::ostringstream msg;
    msg << "path sum: endpoints (" << q_start << ", " << q_end << ") out of range for n = " << n;
    throw DimensionError(msg.str());
  }
  const std::uint64_t required =
      cfg.collapse_momenta ? collapsed_term_count(weights, q_start) : path_term_count(n, weights.size());
  if (required > cfg.max_terms) {
    std::ostringstream msg;
    msg << "path sum needs " << required << " terms, budget is " << cfg.max_terms;
    throw BudgetError(msg.str(), required);
  }

  // Absent weights are stored as exact zeros, so visiting them adds nothing.
  Enumerator e(weights, q_start, q_end, cfg.collapse_momenta);
  std::vector<Enumerator::Partial> partials(e.partition_count());

  unsigned workers = cfg.workers != 0 ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, partials.size()));
  if (required < (1u << 16)) workers = 1;

  if (workers <= 1) {
    for (std::size_t i = 0; i < partials.size(); ++i) partials[i] = e.run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < partials.size(); i = next++) partials[i] = e.run(i);
      });
    }
  }

  PathSumResult r;
  for (const auto& part : partials) {
    r.amplitude += part.sum;
    r.terms_visited += part.visited;
    r.terms_omitted += part.omitted;
  }
  // Collapsing skips absent momenta without visiting them.
  if (cfg.collapse_momenta) r.terms_omitted += path_term_count(n, weights.size()) - r.terms_visited;
  return r;
}

}  // namespace

void PhasePath::validate() const {
  if (p.empty()) throw DimensionError("phase path needs at least one segment");
  if (q.size() != p.size() + 1) throw DimensionError("phase path needs N+1 coordinates for N momenta");
  for (std::size_t v : q)
    if (v >= n) throw DimensionError("phase path coordinate out of range");
  for (std::size_t v : p)
    if (v >= n) throw DimensionError("phase path momentum out of range");
}

void PathSumConfig::validate() const {
  if (!(zero_eps > 0.0)) throw Error("zero_eps must be positive");
  if (max_terms < 1) throw Error("max_terms must be at least 1");
}

CMatrix step_operator_approx(const StepSpec& s) {
  require_real(s);
  const Symbol& h = s.hamiltonian;
  const Symbol w = Symbol::generate(h.n(), [&](std::size_t p, std::size_t q) {
    return std::polar(1.0, -h(p, q).real() * s.dt);
  });
  return quantize(w, Ordering::kAsymmetricLeft);
}

CMatrix step_operator_exact(const StepSpec& s) {
  require_real(s);
  return mat_exp(Complex{0.0, -s.dt} * quantize(s.hamiltonian, Ordering::kAsymmetricLeft));
}

std::size_t EffectiveHamiltonian::absent_count() const {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](const auto& v) { return !v; }));
}

EffectiveHamiltonian effective_hamiltonian(const CMatrix& step, double dt, double zero_eps) {
  if (dt == 0.0) throw Error("effective_hamiltonian: dt must be nonzero");
  if (!(zero_eps > 0.0)) throw Error("effective_hamiltonian: zero_eps must be positive");
  const Symbol s = dequantize_l(step);
  double max_abs = 0.0;
  for (const Complex& z : s.values()) max_abs = std::max(max_abs, std::abs(z));

  EffectiveHamiltonian h;
  h.n = s.n();
  h.dt = dt;
  h.values.resize(h.n * h.n);
  for (std::size_t p = 0; p < h.n; ++p)
    for (std::size_t q = 0; q < h.n; ++q) {
      const Complex v = s(p, q);
      if (max_abs > 0.0 && std::abs(v) > zero_eps * max_abs) {
        h.values[p * h.n + q] = Complex{0.0, 1.0} * std::log(v) / dt;
      }
    }
  return h;
}

Symbol effective_step_symbol(const EffectiveHamiltonian& h) {
  return Symbol::generate(h.n, [&](std::size_t p, std::size_t q) -> Complex {
    const auto& v = h.at(p, q);
    return v ? std::exp(Complex{0.0, -h.dt} * *v) : Complex{};
  });
}

double discrete_action(const PhasePath& path, const Symbol& h, double dt) {
  path.validate();
  if (h.n() != path.n) throw DimensionError("discrete_action: symbol and path dimensions differ");
  if (max_imag(h) > 1e-12) throw Error("discrete_action: Hamiltonian must be real-valued");
  const double unit = kTwoPi / static_cast<double>(path.n);
  double action = 0.0;
  for (std::size_t k = 0; k < path.segments(); ++k) {
    const std::size_t dq = (path.q[k + 1] + path.n - path.q[k]) % path.n;
    action += unit * static_cast<double>(path.p[k]) * kActionOrientation * static_cast<double>(dq) -
              h(path.p[k], path.q[k]).real() * dt;
  }
  return action;
}

std::uint64_t path_term_count(std::size_t n, std::size_t segments) {
  if (segments == 0) return 0;
  return sat_pow(n, 2 * segments - 1);
}

PathSumResult pathsum_bruteforce(std::span<const StepSpec> steps, std::size_t q_start, std::size_t q_end,
                                 const PathSumConfig& cfg) {
  cfg.validate();
  const std::vector<StepWeights> weights = weights_for(steps, cfg);
  return enumerate(weights, q_start, q_end, cfg);
}

PathSumResult pathsum_bruteforce_operators(std::span<const CMatrix> step_ops, std::size_t q_start,
                                           std::size_t q_end, const PathSumConfig& cfg) {
  cfg.validate();
  std::vector<StepWeights> weights;
  weights.reserve(step_ops.size());
  for (const CMatrix& op : step_ops) weights.push_back(exact_weights(op, cfg.zero_eps));
  return enumerate(weights, q_start, q_end, cfg);
}

CMatrix contract_operators(std::span<const CMatrix> step_ops) {
  if (step_ops.empty()) throw DimensionError("contraction needs at least one step");
  CMatrix total = step_ops.front();
  for (std::size_t k = 1; k < step_ops.size(); ++k) total = mat_mul(step_ops[k], total);
  return total;
}

CMatrix pathsum_contract(std::span<const StepSpec> steps, const PathSumConfig& cfg) {
  cfg.validate();
  if (steps.empty()) throw DimensionError("contraction needs at least one step");
  std::vector<CMatrix> ops;
  ops.reserve(steps.size());
  for (const StepSpec& s : steps) {
    if (s.hamiltonian.n() != steps.front().hamiltonian.n()) {
      throw DimensionError("contraction steps have different dimensions");
    }
    ops.push_back(cfg.mode == PathSumMode::kApproxFirstOrder ? step_operator_approx(s) : step_operator_exact(s));
  }
  return contract_operators(ops);
}

void for_each_path(std::span<const StepSpec> steps, std::size_t q_start, std::size_t q_end,
                   const PathSumConfig& cfg, const PathVisitor& visit) {
  cfg.validate();
  const std::vector<StepWeights> weights = weights_for(steps, cfg);
  const std::size_t n = common_dimension(weights);
  const std::size_t segments = weights.size();
  if (q_start >= n || q_end >= n) throw DimensionError("path endpoints out of range");
  const std::uint64_t required = path_term_count(n, segments);
  if (required > cfg.max_terms) {
    std::ostringstream msg;
    msg << "path enumeration needs " << required << " terms, budget is " << cfg.max_terms;
    throw BudgetError(msg.str(), required);
  }

  const bool approx = cfg.mode == PathSumMode::kApproxFirstOrder;
  const double unit = kTwoPi / static_cast<double>(n);
  const double scale = std::pow(static_cast<double>(n), -static_cast<double>(segments));

  PhasePath path;
  path.n = n;
  path.q.assign(segments + 1, 0);
  path.p.assign(segments, 0);
  path.q[0] = q_start;
  path.q[segments] = q_end;

  // Depth-first in the order q_{k+1} outer, p_k inner, per segment.
  std::function<void(std::size_t, double, double)> walk = [&](std::size_t k, double action, double modulus) {
    if (k == segments) {
      visit(path, action, std::polar(scale * modulus, action));
      return;
    }
    const StepWeights& wk = weights[k];
    const std::size_t q = path.q[k];
    const std::size_t next_lo = (k + 1 == segments) ? q_end : 0;
    const std::size_t next_hi = (k + 1 == segments) ? q_end + 1 : n;
    for (std::size_t next = next_lo; next < next_hi; ++next) {
      path.q[k + 1] = next;
      const double dq = static_cast<double>((next + n - q) % n);
      for (std::size_t p = 0; p < n; ++p) {
        if (!wk.is_present(p, q)) continue;
        path.p[k] = p;
        const double kinetic = unit * static_cast<double>(p) * kActionOrientation * dq;
        if (approx) {
          walk(k + 1, action + kinetic - wk.energy_dt[p * n + q], modulus);
        } else {
          const Complex s = static_cast<double>(n) * wk.weight(p, q);
          walk(k + 1, action + kinetic + std::arg(s), modulus * std::abs(s));
        }
      }
    }
  };
  walk(0, 0.0, 1.0);
}

std::vector<ConvergencePoint> convergence_order(const Symbol& h, double total_time,
                                                std::span<const std::size_t> n_steps) {
  if (max_imag(h) > 1e-12) throw Error("convergence_order: Hamiltonian must be real-valued");
  const CMatrix h_op = quantize(h, Ordering::kAsymmetricLeft);
  const double defect = hermiticity_defect(h_op);
  if (defect > 1e-8) {
    std::ostringstream msg;
    msg << "convergence_order: quantized Hamiltonian is not Hermitian (||H - H^dagger||_F = " << defect << ")";
    throw HermiticityError(msg.str(), defect);
  }
  const CMatrix oracle = mat_exp(Complex{0.0, -total_time} * h_op);

  std::vector<ConvergencePoint> out;
  out.reserve(n_steps.size());
  for (std::size_t steps : n_steps) {
    if (steps == 0) throw Error("convergence_order: step counts must be positive");
    const double dt = total_time / static_cast<double>(steps);
    const CMatrix step = step_operator_approx(StepSpec{h, dt});
    CMatrix total = step;
    for (std::size_t k = 1; k < steps; ++k) total = mat_mul(step, total);
    out.push_back({steps, dt, frob_dist(total, oracle)});
  }
  return out;
}

}  // namespace dwq
