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


#include "dwq/weyl.hpp"

namespace dwq {

WeylPair weyl_pair(std::size_t n) {
  if (n == 0) throw DimensionError("weyl_pair: n must be >= 1");
  const auto nn = static_cast<long long>(n);
  CMatrix u(n);
  CMatrix v(n);
  for (std::size_t j = 0; j < n; ++j) {
    u(j, static_cast<std::size_t>(mod_n(static_cast<long long>(j) + 1, nn))) = 1.0;
    v(j, j) = root_of_unity(static_cast<long long>(j), nn);
  }
  return WeylPair{n, std::move(u), std::move(v), root_of_unity(1, nn)};
}

CMatrix weyl_word(std::size_t n, long long a, long long b) {
  if (n == 0) throw DimensionError("weyl_word: n must be >= 1");
  const auto nn = static_cast<long long>(n);
  a = mod_n(a, nn);
  b = mod_n(b, nn);
  CMatrix w(n);
  for (long long j = 0; j < nn; ++j) {
    const long long k = mod_n(j + a, nn);
    w(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) = root_of_unity(b * k, nn);
  }
  return w;
}

CMatrix weyl_word(const WeylPair& wp, long long a, long long b) { return weyl_word(wp.n, a, b); }

}  // namespace dwq
