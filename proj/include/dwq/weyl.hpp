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


#ifndef DWQ_WEYL_HPP
#define DWQ_WEYL_HPP

#include <cstddef>

#include "dwq/linalg.hpp"

namespace dwq {

/// The finite Weyl pair on C^n.
///
/// U is the cyclic shift U|k> = |k-1 mod n>, stored as entry(j, k) =
/// delta_{k, j+1 mod n}; V is the clock V|k> = e^{2 pi i k/n}|k>. With these
/// U V = omega V U, omega = e^{2 pi i/n}, and U^n = V^n = I.
struct WeylPair {
  std::size_t n;
  CMatrix u;
  CMatrix v;
  Complex omega;
};

/// Throws DimensionError for n == 0.
WeylPair weyl_pair(std::size_t n);

/// U^a V^b with a, b reduced to [0, n). Entry (j, k) is
/// delta_{k, j+a} e^{2 pi i b k/n}.
CMatrix weyl_word(const WeylPair& wp, long long a, long long b);

/// Same word for dimension n without building the pair.
CMatrix weyl_word(std::size_t n, long long a, long long b);

}  // namespace dwq

#endif  // DWQ_WEYL_HPP
