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


#ifndef DWQ_QUANTIZATION_HPP
#define DWQ_QUANTIZATION_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dwq/linalg.hpp"

namespace dwq {

/// n x n table of complex values on the lattice Z_n x Z_n, row-major in the
/// first index. The tag keeps symbols and their Fourier co-images apart.
template <class Tag>
class LatticeTable {
 public:
  explicit LatticeTable(std::size_t n) : n_(n), values_(n * n) {
    if (n == 0) throw DimensionError("lattice table: n must be >= 1");
  }

  LatticeTable(std::size_t n, std::vector<Complex> values) : n_(n), values_(std::move(values)) {
    if (n == 0) throw DimensionError("lattice table: n must be >= 1");
    if (values_.size() != n * n) throw DimensionError("lattice table: expected n*n values");
    for (const Complex& z : values_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error("lattice table: non-finite value");
      }
    }
  }

  static LatticeTable constant(std::size_t n, Complex c) {
    return LatticeTable(n, std::vector<Complex>(n * n, c));
  }

  /// Table with value f(x, y) at every lattice point.
  static LatticeTable generate(std::size_t n, const std::function<Complex(std::size_t, std::size_t)>& f) {
    LatticeTable t(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) t(x, y) = f(x, y);
    return t;
  }

  std::size_t n() const noexcept { return n_; }
  Complex& operator()(std::size_t x, std::size_t y) { return values_[x * n_ + y]; }
  const Complex& operator()(std::size_t x, std::size_t y) const { return values_[x * n_ + y]; }

  /// Value at (x mod n, y mod n).
  const Complex& wrapped(long long x, long long y) const {
    const auto nn = static_cast<long long>(n_);
    return (*this)(static_cast<std::size_t>(mod_n(x, nn)), static_cast<std::size_t>(mod_n(y, nn)));
  }

  std::span<const Complex> values() const noexcept { return values_; }

  LatticeTable& operator+=(const LatticeTable& rhs) {
    if (rhs.n_ != n_) throw DimensionError("lattice table: dimension mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs.values_[i];
    return *this;
  }
  LatticeTable& operator*=(Complex s) {
    for (Complex& z : values_) z *= s;
    return *this;
  }
  friend LatticeTable operator+(LatticeTable a, const LatticeTable& b) { return a += b; }
  friend LatticeTable operator*(Complex s, LatticeTable a) { return a *= s; }
  friend bool operator==(const LatticeTable&, const LatticeTable&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> values_;
};

struct SymbolTag {};
struct SymbolTildeTag {};

/// M(p, q), indexed (p, q).
using Symbol = LatticeTable<SymbolTag>;
/// Fourier co-image M~(a, b), indexed (a, b).
using SymbolTilde = LatticeTable<SymbolTildeTag>;

enum class Ordering { kAsymmetricLeft, kSymmetricWeyl };

/// Largest |Im M(p, q)|.
double max_imag(const Symbol& m);

/// M(p,q) = (1/n) sum_{a,b} e^{2 pi i (a p + b q)/n} M~(a,b).
Symbol tilde_to_symbol(const SymbolTilde& t);

/// M~(a,b) = (1/n) sum_{p,q} e^{-2 pi i (a p + b q)/n} M(p,q); the exact
/// inverse of tilde_to_symbol.
SymbolTilde symbol_to_tilde(const Symbol& m);

/// Operator of a symbol in the Weyl word basis:
///   left:      (1/n) sum_{a,b} U^a V^b M~(a,b)
///   symmetric: (1/n) sum_{a,b} e^{pi i a b/n} U^a V^b M~(a,b)
/// with a, b in [0, n). The symmetric phase depends on that choice of
/// representatives and the result need not be Hermitian for real symbols.
CMatrix quantize(const Symbol& m, Ordering ord);

/// Left-ordered operator built straight from the symbol:
///   <j|M|k> = (1/n) sum_p e^{2 pi i p (j - k)/n} M(p, k).
/// The symbol's coordinate slot is the ket index. Agrees with
/// quantize(m, Ordering::kAsymmetricLeft) to rounding.
CMatrix kernel_from_symbol(const Symbol& m);

/// Inverse of left-ordered quantization:
///   M(p, q) = sum_d e^{-2 pi i p d/n} <q+d|M|q>.
Symbol dequantize_l(const CMatrix& m_hat);

/// Unitary DFT matrix, F(j, k) = e^{2 pi i j k/n}/sqrt(n).
CMatrix dft_matrix(std::size_t n);

}  // namespace dwq

#endif  // DWQ_QUANTIZATION_HPP
