/*
 * Copyright 2026 The epsmsr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Independent reference computations for tests. Nothing here calls the
// library's arithmetic; everything is plain integers mod q.

#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "epsmsr/array_code.hpp"
#include "epsmsr/matrix.hpp"

namespace oracle {

using Dense = std::vector<std::vector<std::uint64_t>>;

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  b %= q;
  for (; e; e >>= 1, b = b * b % q) {
    if (e & 1) r = r * b % q;
  }
  return r;
}

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

// Multiplicative order by repeated multiplication.
inline std::uint64_t order(std::uint64_t a, std::uint64_t q) {
  std::uint64_t x = a % q, k = 1;
  while (x != 1) {
    x = x * a % q;
    ++k;
  }
  return k;
}

inline std::uint64_t smallest_field(std::uint64_t n, std::uint64_t s) {
  for (std::uint64_t q = 2;; ++q) {
    if (is_prime(q) && q >= std::gcd(s, q - 1) * n + 1) return q;
  }
}

inline std::size_t rank(Dense m, std::uint64_t q) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] % q == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const std::uint64_t inv = pow_mod(m[r][c], q - 2, q);
    for (auto& v : m[r]) v = v * inv % q;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] % q == 0) continue;
      const std::uint64_t f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = (m[i][j] + (q - f) * m[r][j]) % q;
    }
    ++r;
  }
  return r;
}

// Cofactor-free determinant by elimination with sign tracking.
inline std::uint64_t det(Dense m, std::uint64_t q) {
  const std::size_t n = m.size();
  std::uint64_t d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] % q == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = (q - d) % q;
    }
    d = d * (m[c][c] % q) % q;
    const std::uint64_t inv = pow_mod(m[c][c], q - 2, q);
    for (std::size_t i = c + 1; i < n; ++i) {
      const std::uint64_t f = m[i][c] * inv % q;
      for (std::size_t j = c; j < n; ++j) m[i][j] = (m[i][j] + (q - f) * m[c][j]) % q;
    }
  }
  return d;
}

inline Dense to_dense(const epsmsr::FieldMatrix& m) {
  Dense out(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).value;
  }
  return out;
}

// Group index of a digit vector, first coordinate most significant.
inline std::size_t index_of(const std::vector<std::uint32_t>& digits, std::uint32_t m) {
  std::size_t idx = 0;
  for (auto d : digits) idx = idx * m + d;
  return idx;
}

inline std::vector<std::uint32_t> digits_of(std::size_t idx, std::uint32_t m, std::uint32_t t) {
  std::vector<std::uint32_t> d(t);
  for (std::uint32_t i = t; i-- > 0; idx /= m) d[i] = static_cast<std::uint32_t>(idx % m);
  return d;
}

// Matrix of h -> h * x_v on Z_m^t: entry (g, g + v) is 1.
inline Dense shift_matrix(const std::vector<std::uint32_t>& v, std::uint32_t m) {
  const auto t = static_cast<std::uint32_t>(v.size());
  std::size_t order = 1;
  for (std::uint32_t i = 0; i < t; ++i) order *= m;
  Dense out(order, std::vector<std::uint64_t>(order, 0));
  for (std::size_t g = 0; g < order; ++g) {
    auto d = digits_of(g, m, t);
    for (std::uint32_t i = 0; i < t; ++i) d[i] = (d[i] + v[i]) % m;
    out[g][index_of(d, m)] = 1;
  }
  return out;
}

// All k-subsets of {0..n-1} avoiding `exclude`, lexicographic.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k,
                                                     const std::vector<std::size_t>& exclude = {}) {
  std::vector<std::size_t> pool;
  for (std::size_t j = 0; j < n; ++j) {
    bool skip = false;
    for (auto e : exclude) skip = skip || e == j;
    if (!skip) pool.push_back(j);
  }
  std::vector<std::vector<std::size_t>> out;
  if (k > pool.size()) return out;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    std::vector<std::size_t> s;
    for (auto p : pick) s.push_back(pool[p]);
    out.push_back(std::move(s));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == pool.size() - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

inline std::vector<epsmsr::FieldElement> random_symbols(std::size_t count, std::uint32_t q, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
  std::vector<epsmsr::FieldElement> out(count);
  for (auto& x : out) x = {pick(rng)};
  return out;
}

}  // namespace oracle
