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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace epsmsr {

// A residue in [0, q). Arithmetic goes through the owning FieldSpec.
struct FieldElement {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

// Prime field GF(q) together with a primitive element alpha.
//
// `g` caches gcd(s, q - 1) for the repair parameter the field was selected
// for; it is 1 for fields built directly from (q, alpha).
class FieldSpec {
 public:
  // Throws ParameterError unless q is a prime below 2^31 and alpha has
  // multiplicative order q - 1.
  FieldSpec(std::uint32_t q, std::uint32_t alpha);

  std::uint32_t modulus() const noexcept { return q_; }
  FieldElement primitive() const noexcept { return {alpha_}; }
  std::uint32_t g() const noexcept { return g_; }
  std::uint32_t selected_for() const noexcept { return s_; }

  FieldElement element(std::int64_t v) const noexcept;
  FieldElement zero() const noexcept { return {0}; }
  FieldElement one() const noexcept { return {1}; }

  FieldElement add(FieldElement a, FieldElement b) const noexcept {
    std::uint32_t s = a.value + b.value;
    return {s >= q_ ? s - q_ : s};
  }
  FieldElement sub(FieldElement a, FieldElement b) const noexcept {
    return {a.value >= b.value ? a.value - b.value : a.value + q_ - b.value};
  }
  FieldElement neg(FieldElement a) const noexcept {
    return {a.value == 0 ? 0 : q_ - a.value};
  }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.value) * b.value % q_)};
  }
  // Throws DomainError on zero.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const noexcept;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.q_ == b.q_ && a.alpha_ == b.alpha_;
  }

 private:
  friend FieldSpec select_field(std::size_t n, std::uint32_t s);

  std::uint32_t q_;
  std::uint32_t alpha_;
  std::uint32_t g_ = 1;
  std::uint32_t s_ = 1;
};

bool is_prime(std::uint64_t v) noexcept;

// Distinct prime factors of v, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t v);

// Smallest element of multiplicative order q - 1.
FieldElement find_primitive_element(std::uint32_t q);

// Smallest prime q with q >= gcd(s, q - 1) * n + 1, with its smallest
// primitive element.
FieldSpec select_field(std::size_t n, std::uint32_t s);

// (alpha^0, ..., alpha^(n-1)). Throws ParameterError when n > q - 1.
std::vector<FieldElement> evaluation_points(const FieldSpec& field, std::size_t n);

// True iff (alpha_i / alpha_j)^s != 1 for every ordered pair of distinct
// evaluation points among the first n.
bool verify_root_condition(const FieldSpec& field, std::size_t n, std::uint32_t s);

}  // namespace epsmsr
