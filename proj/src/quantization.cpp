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


#include "dwq/quantization.hpp"

#include <cmath>

namespace dwq {

namespace {

std::vector<Complex> root_table(std::size_t n) {
  std::vector<Complex> w(n);
  for (std::size_t m = 0; m < n; ++m) w[m] = root_of_unity(static_cast<long long>(m), static_cast<long long>(n));
  return w;
}

// out(x, y) = scale * sum_{u,v} w^{sign (x u + y v)} in(u, v), done one axis at a time.
template <class Out, class In>
Out dft2(const In& in, int sign, double scale) {
  const std::size_t n = in.n();
  const std::vector<Complex> w = root_table(n);
  auto phase = [&](std::size_t x, std::size_t u) {
    const std::size_t e = (x * u) % n;
    return sign > 0 ? w[e] : w[(n - e) % n];
  };
  std::vector<Complex> half(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t v = 0; v < n; ++v) {
      Complex s = 0.0;
      for (std::size_t u = 0; u < n; ++u) s += phase(x, u) * in(u, v);
      half[x * n + v] = s;
    }
  Out out(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Complex s = 0.0;
      for (std::size_t v = 0; v < n; ++v) s += phase(y, v) * half[x * n + v];
      out(x, y) = scale * s;
    }
  return out;
}

}  // namespace

double max_imag(const Symbol& m) {
  double worst = 0.0;
  for (const Complex& z : m.values()) worst = std::max(worst, std::abs(z.imag()));
  return worst;
}

Symbol tilde_to_symbol(const SymbolTilde& t) {
  return dft2<Symbol>(t, +1, 1.0 / static_cast<double>(t.n()));
}

SymbolTilde symbol_to_tilde(const Symbol& m) {
  return dft2<SymbolTilde>(m, -1, 1.0 / static_cast<double>(m.n()));
}

CMatrix quantize(const Symbol& m, Ordering ord) {
  const std::size_t n = m.n();
  const auto nn = static_cast<long long>(n);
  const SymbolTilde t = symbol_to_tilde(m);
  const std::vector<Complex> w = root_table(n);
  const double inv_n = 1.0 / static_cast<double>(n);

  CMatrix out(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Complex coeff = inv_n * t(a, b);
      if (ord == Ordering::kSymmetricWeyl) {
        coeff *= root_of_unity(static_cast<long long>(a * b), 2 * nn);
      }
      if (coeff == Complex{}) continue;
      // (U^a V^b)(j, k) = delta_{k, j+a} w^{b k}
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = (j + a) % n;
        out(j, k) += coeff * w[(b * k) % n];
      }
    }
  }
  return out;
}

CMatrix kernel_from_symbol(const Symbol& m) {
  const std::size_t n = m.n();
  const std::vector<Complex> w = root_table(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  CMatrix out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = (j + n - k) % n;
      Complex s = 0.0;
      for (std::size_t p = 0; p < n; ++p) s += w[(p * d) % n] * m(p, k);
      out(j, k) = inv_n * s;
    }
  return out;
}

Symbol dequantize_l(const CMatrix& m_hat) {
  const std::size_t n = m_hat.n();
  const std::vector<Complex> w = root_table(n);
  Symbol out(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      Complex s = 0.0;
      for (std::size_t d = 0; d < n; ++d) {
        const std::size_t e = (p * d) % n;
        s += w[(n - e) % n] * m_hat((q + d) % n, q);
      }
      out(p, q) = s;
    }
  return out;
}

CMatrix dft_matrix(std::size_t n) {
  const auto nn = static_cast<long long>(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CMatrix f(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      f(j, k) = scale * root_of_unity(static_cast<long long>(j * k), nn);
  return f;
}

}  // namespace dwq
