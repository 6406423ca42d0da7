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

#ifndef DWQ_LINALG_HPP
#define DWQ_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dwq {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Raised when an operator that must be Hermitian is not; carries the defect
/// ||h - h^dagger||_F.
class HermiticityError : public Error {
 public:
  HermiticityError(const std::string& what, double defect) : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// Canonical representative of `value mod n` in [0, n).
constexpr long long mod_n(long long value, long long n) {
  long long r = value % n;
  return r < 0 ? r + n : r;
}

/// e^{2 pi i m / n}. Exact (no rounding) at multiples of a quarter turn.
Complex root_of_unity(long long m, long long n);

/// Dense n x n complex matrix, row-major. entry(j, k) = <j|A|k>: the row is the
/// bra index and the column is the ket index.
class CMatrix {
 public:
  /// n x n zero matrix; n must be >= 1.
  explicit CMatrix(std::size_t n);
  /// Takes ownership of n*n row-major entries; all must be finite.
  CMatrix(std::size_t n, std::vector<Complex> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);

  std::size_t n() const noexcept { return n_; }

  Complex& operator()(std::size_t j, std::size_t k) { return data_[j * n_ + k]; }
  const Complex& operator()(std::size_t j, std::size_t k) const { return data_[j * n_ + k]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  Complex trace() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// Standard matrix product. Throws DimensionError when sizes differ.
CMatrix mat_mul(const CMatrix& a, const CMatrix& b);

/// Conjugate transpose.
CMatrix mat_dagger(const CMatrix& a);

/// Frobenius norm of a - b. Throws DimensionError when sizes differ.
double frob_dist(const CMatrix& a, const CMatrix& b);

double frob_norm(const CMatrix& a);

/// ||a - a^dagger||_F.
double hermiticity_defect(const CMatrix& a);

/// ||a^dagger a - I||_F.
double unitarity_defect(const CMatrix& a);

/// exp(a) for a general complex matrix, by scaling and squaring of the Taylor
/// series.
CMatrix mat_exp(const CMatrix& a);

/// exp(-i t h) for Hermitian h. Throws HermiticityError when
/// ||h - h^dagger||_F > 1e-10 ||h||_F.
CMatrix mat_exp_skew(const CMatrix& h, double t);

}  // namespace dwq

#endif  // DWQ_LINALG_HPP
