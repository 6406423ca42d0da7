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


#ifndef DWQ_TESTS_TEST_UTIL_HPP
#define DWQ_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <random>
#include <span>

#include "dwq/linalg.hpp"
#include "dwq/quantization.hpp"

namespace dwq::testing {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return {g(rng), g(rng)};
}

inline CMatrix random_matrix(std::size_t n, Rng& rng) {
  CMatrix m(n);
  for (Complex& z : m.entries()) z = random_complex(rng);
  return m;
}

inline CMatrix random_hermitian(std::size_t n, Rng& rng) {
  const CMatrix a = random_matrix(n, rng);
  return 0.5 * (a + mat_dagger(a));
}

inline CMatrix random_unitary(std::size_t n, Rng& rng) {
  return mat_exp_skew(random_hermitian(n, rng), 1.0);
}

inline Symbol random_symbol(std::size_t n, Rng& rng) {
  Symbol s(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) s(p, q) = random_complex(rng);
  return s;
}

inline Symbol random_real_symbol(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Symbol s(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) s(p, q) = g(rng);
  return s;
}

inline SymbolTilde random_tilde(std::size_t n, Rng& rng) {
  SymbolTilde t(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t(a, b) = random_complex(rng);
  return t;
}

template <class Table>
double max_abs_diff(const Table& a, const Table& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

inline double max_entry_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace dwq::testing

#endif  // DWQ_TESTS_TEST_UTIL_HPP
