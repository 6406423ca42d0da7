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

#include "dwq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dwq {

Complex root_of_unity(long long m, long long n) {
  if (n <= 0) throw DimensionError("root_of_unity: n must be positive");
  m = mod_n(m, n);
  if ((4 * m) % n == 0) {
    switch ((4 * m) / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  // Smallest-magnitude angle keeps the argument well conditioned.
  const long long r = (2 * m > n) ? m - n : m;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(n));
}

namespace {

void require_same_size(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.n() != b.n()) {
    std::ostringstream msg;
    msg << op << ": dimension mismatch (" << a.n() << " vs " << b.n() << ")";
    throw DimensionError(msg.str());
  }
}

double norm1(const CMatrix& a) {
  double best = 0.0;
  for (std::size_t k = 0; k < a.n(); ++k) {
    double col = 0.0;
    for (std::size_t j = 0; j < a.n(); ++j) col += std::abs(a(j, k));
    best = std::max(best, col);
  }
  return best;
}

}  // namespace

CMatrix::CMatrix(std::size_t n) : n_(n), data_(n * n) {
  if (n == 0) throw DimensionError("CMatrix: dimension must be >= 1");
}

CMatrix::CMatrix(std::size_t n, std::vector<Complex> entries) : n_(n), data_(std::move(entries)) {
  if (n == 0) throw DimensionError("CMatrix: dimension must be >= 1");
  if (data_.size() != n * n) {
    std::ostringstream msg;
    msg << "CMatrix: expected " << n * n << " entries, got " << data_.size();
    throw DimensionError(msg.str());
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error("CMatrix: non-finite entry");
    }
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) m(j, j) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size());
  for (std::size_t j = 0; j < diag.size(); ++j) m(j, j) = diag[j];
  return m;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t j = 0; j < n_; ++j) t += (*this)(j, j);
  return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  require_same_size(*this, rhs, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  require_same_size(*this, rhs, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(const CMatrix& a, const CMatrix& b) { return mat_mul(a, b); }

CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  require_same_size(a, b, "mat_mul");
  const std::size_t n = a.n();
  CMatrix c(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) {
      const Complex ajm = a(j, m);
      if (ajm == Complex{}) continue;
      for (std::size_t k = 0; k < n; ++k) c(j, k) += ajm * b(m, k);
    }
  }
  return c;
}

CMatrix mat_dagger(const CMatrix& a) {
  CMatrix d(a.n());
  for (std::size_t j = 0; j < a.n(); ++j)
    for (std::size_t k = 0; k < a.n(); ++k) d(k, j) = std::conj(a(j, k));
  return d;
}

double frob_dist(const CMatrix& a, const CMatrix& b) {
  require_same_size(a, b, "frob_dist");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) sum += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(sum);
}

double frob_norm(const CMatrix& a) {
  double sum = 0.0;
  for (const Complex& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

double hermiticity_defect(const CMatrix& a) { return frob_dist(a, mat_dagger(a)); }

double unitarity_defect(const CMatrix& a) {
  return frob_dist(mat_dagger(a) * a, CMatrix::identity(a.n()));
}

CMatrix mat_exp(const CMatrix& a) {
  const std::size_t n = a.n();
  const double norm = norm1(a);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));

  CMatrix scaled = std::ldexp(1.0, -squarings) * a;
  CMatrix result = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  // ||scaled||_1 <= 1/2, so 30 terms reach far below double rounding.
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * (term * scaled);
    result += term;
    if (norm1(term) <= 1e-20 * norm1(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

CMatrix mat_exp_skew(const CMatrix& h, double t) {
  const double defect = hermiticity_defect(h);
  if (defect > 1e-10 * frob_norm(h)) {
    std::ostringstream msg;
    msg << "mat_exp_skew: operator is not Hermitian (||h - h^dagger||_F = " << defect << ")";
    throw HermiticityError(msg.str(), defect);
  }
  return mat_exp(Complex{0.0, -t} * h);
}

}  // namespace dwq
