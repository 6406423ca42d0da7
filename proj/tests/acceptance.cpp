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


// Acceptance suite: one PASS/FAIL line per criterion. Exit status 1 if any
// fails, unless the failing set is exactly the one given by --expect-fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dwq/linalg.hpp"
#include "dwq/pathsum.hpp"
#include "dwq/quantization.hpp"
#include "dwq/symbol_lang.hpp"
#include "dwq/weyl.hpp"
#include "test_util.hpp"

using namespace dwq;
using dwq::testing::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // <= 0: no limit
  std::function<Outcome()> body;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome weyl_commutation() {
  double worst = 0.0;
  for (std::size_t n = 1; n <= 32; ++n) {
    const WeylPair wp = weyl_pair(n);
    worst = std::max(worst, frob_dist(wp.u * wp.v, root_of_unity(1, static_cast<long long>(n)) * (wp.v * wp.u)));
  }
  return {worst <= 1e-12, "max defect " + fmt(worst)};
}

Outcome round_trips() {
  Rng rng(2);
  double sym_worst = 0.0, op_worst = 0.0;
  for (std::size_t n = 1; n <= 16; ++n)
    for (int trial = 0; trial < 100; ++trial) {
      const Symbol s = dwq::testing::random_symbol(n, rng);
      const Symbol back = dequantize_l(quantize(s, Ordering::kAsymmetricLeft));
      sym_worst = std::max(sym_worst, dwq::testing::max_abs_diff(back, s));
      const CMatrix m = dwq::testing::random_matrix(n, rng);
      op_worst = std::max(op_worst, frob_dist(quantize(dequantize_l(m), Ordering::kAsymmetricLeft), m));
    }
  return {sym_worst <= 1e-10 && op_worst <= 1e-10,
          "symbol residual " + fmt(sym_worst) + ", operator residual " + fmt(op_worst)};
}

Outcome two_routes() {
  Rng rng(3);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 16;
    const Symbol s = dwq::testing::random_symbol(n, rng);
    worst = std::max(worst, dwq::testing::max_entry_diff(kernel_from_symbol(s).entries(),
                                                       quantize(s, Ordering::kAsymmetricLeft).entries()));
  }
  return {worst <= 1e-12, "max elementwise difference " + fmt(worst)};
}

Outcome dft_symbol() {
  double sym_worst = 0.0, f4_worst = 0.0;
  for (std::size_t n = 1; n <= 16; ++n) {
    const CMatrix f = dft_matrix(n);
    const Symbol s = dequantize_l(f);
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const long long qq = static_cast<long long>(q);
        const Complex expected = p == q ? root_n * root_of_unity(qq * qq, static_cast<long long>(n)) : Complex{};
        sym_worst = std::max(sym_worst, std::abs(s(p, q) - expected));
      }
    const CMatrix f2 = f * f;
    f4_worst = std::max(f4_worst, dwq::testing::max_entry_diff((f2 * f2).entries(), CMatrix::identity(n).entries()));
  }
  return {sym_worst <= 1e-10 && f4_worst <= 1e-10, "symbol error " + fmt(sym_worst) + ", F^4 error " + fmt(f4_worst)};
}

// Random step operators whose left symbols vanish at a few planted points.
std::vector<CMatrix> planted_zero_steps(std::size_t n, std::size_t count, Rng& rng, std::size_t& planted) {
  std::vector<CMatrix> ops;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (std::size_t k = 0; k < count; ++k) {
    Symbol s = dwq::testing::random_symbol(n, rng);
    if (n >= 2) {
      for (std::size_t z = 0; z < std::max<std::size_t>(1, n / 2); ++z) s(idx(rng), idx(rng)) = 0.0;
      ++planted;
    }
    ops.push_back(quantize(s, Ordering::kAsymmetricLeft));
  }
  return ops;
}

Outcome pathsum_identity() {
  Rng rng(5);
  std::uniform_real_distribution<double> dt_dist(0.05, 0.6);
  PathSumConfig cfg;
  cfg.mode = PathSumMode::kExactEffective;
  double worst = 0.0;
  std::size_t cases = 0, elements = 0, planted = 0;
  for (std::size_t n = 1; n <= 16; ++n)
    for (std::size_t big_n = 1; big_n <= (n == 1 ? 12u : 64u); ++big_n) {
      if (path_term_count(n, big_n) > 1000000u) break;
      ++cases;
      for (int seq = 0; seq < 20; ++seq) {
        CMatrix oracle(n);
        std::function<Complex(std::size_t, std::size_t)> element;
        std::vector<StepSpec> specs;
        std::vector<CMatrix> ops;
        if (seq % 2 == 0) {
          for (std::size_t k = 0; k < big_n; ++k)
            specs.push_back({dwq::testing::random_real_symbol(n, rng), dt_dist(rng)});
          oracle = pathsum_contract(specs, cfg);
          element = [&](std::size_t a, std::size_t b) { return pathsum_bruteforce(specs, a, b, cfg).amplitude; };
        } else {
          ops = planted_zero_steps(n, big_n, rng, planted);
          oracle = contract_operators(ops);
          element = [&](std::size_t a, std::size_t b) {
            return pathsum_bruteforce_operators(ops, a, b, cfg).amplitude;
          };
        }
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            worst = std::max(worst, std::abs(element(a, b) - oracle(b, a)));
            ++elements;
          }
      }
    }
  return {worst <= 1e-9, std::to_string(cases) + " (n, N) cases, " + std::to_string(elements) + " elements, " +
                             std::to_string(planted) + " steps with planted zeros, max error " + fmt(worst)};
}

Outcome term_census() {
  Rng rng(6);
  PathSumConfig cfg;
  cfg.mode = PathSumMode::kExactEffective;
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t big_n = 1; big_n <= 4; ++big_n) {
      std::uint64_t paths = 1, momenta = 1;
      for (std::size_t k = 0; k + 1 < big_n; ++k) paths *= n;
      for (std::size_t k = 0; k < big_n; ++k) momenta *= n;
      const std::uint64_t expected = paths * momenta;
      if (expected > 1000000u) continue;
      std::size_t planted = 0;
      const std::vector<CMatrix> ops = planted_zero_steps(n, big_n, rng, planted);
      const PathSumResult r = pathsum_bruteforce_operators(ops, 0, n - 1, cfg);
      if (r.terms_visited != expected || path_term_count(n, big_n) != expected)
        return {false, "n=" + std::to_string(n) + " N=" + std::to_string(big_n) + ": visited " +
                           std::to_string(r.terms_visited) + ", expected " + std::to_string(expected)};
      ++checked;
    }
  return {true, std::to_string(checked) + " (n, N) cases exact"};
}

Outcome trotter_order() {
  const Symbol h = symbol_from_expr(*parse_expr("cos(2*pi*q/n)"), 4);
  const std::vector<std::size_t> list{8, 16, 32, 64};
  const std::vector<ConvergencePoint> pts = convergence_order(h, 1.0, list);
  bool pass = true;
  std::ostringstream os;
  os << "errors";
  for (const auto& pt : pts) os << " " << fmt(pt.error);
  os << "; ratios";
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double ratio = pts[i - 1].error / pts[i].error;
    pass = pass && ratio >= 1.7 && ratio <= 2.3;
    os << " " << fmt(ratio);
  }
  return {pass, os.str()};
}

Outcome effective_consistency() {
  Rng rng(8);
  std::uniform_real_distribution<double> dt_dist(0.1, 1.0);
  double worst = 0.0;
  int trials = 0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (int t = 0; t < 10; ++t) {
      CMatrix step = dwq::testing::random_unitary(n, rng);
      const Symbol s = dequantize_l(step);
      double smallest = 1e300, largest = 0.0;
      for (const Complex& z : s.values()) {
        smallest = std::min(smallest, std::abs(z));
        largest = std::max(largest, std::abs(z));
      }
      if (smallest <= 1e-6 * largest) continue;
      const double dt = dt_dist(rng);
      const EffectiveHamiltonian h = effective_hamiltonian(step, dt);
      worst = std::max(worst, frob_dist(quantize(effective_step_symbol(h), Ordering::kAsymmetricLeft), step));
      ++trials;
    }
  return {trials > 0 && worst <= 1e-10, std::to_string(trials) + " steps, max defect " + fmt(worst)};
}

Outcome non_hermiticity_witness() {
  Rng rng(2024);
  for (int attempt = 1; attempt <= 1000; ++attempt) {
    const Symbol s = dwq::testing::random_real_symbol(3, rng);
    const double defect = hermiticity_defect(quantize(s, Ordering::kSymmetricWeyl));
    if (defect > 1e-6) return {true, "attempt " + std::to_string(attempt) + ", defect " + fmt(defect)};
  }
  return {false, "no witness in 1000 attempts"};
}

Outcome collapse_agreement() {
  double worst = 0.0;
  std::uint64_t full_terms = 0, collapsed_terms = 0;
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t big_n = 1; big_n <= 4; ++big_n) {
      const std::vector<CMatrix> ops(big_n, dft_matrix(n));
      PathSumConfig full, collapsed;
      collapsed.collapse_momenta = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const PathSumResult rf = pathsum_bruteforce_operators(ops, a, b, full);
          const PathSumResult rc = pathsum_bruteforce_operators(ops, a, b, collapsed);
          worst = std::max(worst, std::abs(rf.amplitude - rc.amplitude));
          full_terms += rf.terms_visited;
          collapsed_terms += rc.terms_visited;
        }
    }
  return {worst <= 1e-12, "max difference " + fmt(worst) + ", terms " + std::to_string(full_terms) + " -> " +
                              std::to_string(collapsed_terms)};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> expect_fail;
  CLI::App app{"dwq acceptance suite"};
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail, e.g. 7")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());

  const std::vector<Criterion> criteria{
      {1, "Weyl commutation, n <= 32", 1.0, weyl_commutation},
      {2, "quantize/dequantize round trips", 10.0, round_trips},
      {3, "kernel vs word-sum quantization", 10.0, two_routes},
      {4, "DFT symbol and F^4 = I", 5.0, dft_symbol},
      {5, "path sum vs contraction, exact mode", 60.0, pathsum_identity},
      {6, "term census n^(2N-1)", 0.0, term_census},
      {7, "Trotter order, cos(2 pi q / n)", 5.0, trotter_order},
      {8, "effective Hamiltonian reproduces step", 5.0, effective_consistency},
      {9, "symmetric quantization non-Hermitian witness", 5.0, non_hermiticity_witness},
      {10, "collapsed vs full enumeration", 5.0, collapse_agreement},
  };
  int failures = 0;
  std::set<int> failed;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += "; over time limit " + fmt(c.time_limit_s) + " s";
    }
    if (!o.pass) {
      ++failures;
      failed.insert(c.id);
    }
    std::printf("[%s] %2d %-45s %8.3f s  %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs, o.detail.c_str(),
                !o.pass && expected.count(c.id) ? "  (expected)" : "");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  if (!expected.empty()) {
    const bool as_expected = failed == expected;
    std::printf("failing set %s the expected set\n", as_expected ? "matches" : "differs from");
    return as_expected ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
