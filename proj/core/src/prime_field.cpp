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

#include "epsmsr/prime_field.hpp"

#include <numeric>
#include <string>

#include "epsmsr/errors.hpp"

namespace epsmsr {

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t q) {
  std::uint64_t result = 1 % q;
  base %= q;
  while (e != 0) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return result;
}

bool is_primitive(std::uint64_t a, std::uint64_t q, const std::vector<std::uint64_t>& factors) {
  if (a == 0 || a >= q) return false;
  if (q == 2) return a == 1;
  for (std::uint64_t p : factors) {
    if (pow_mod(a, (q - 1) / p, q) == 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

FieldSpec::FieldSpec(std::uint32_t q, std::uint32_t alpha) : q_(q), alpha_(alpha) {
  if (q >= kMaxModulus || !is_prime(q)) {
    throw ParameterError("field modulus " + std::to_string(q) + " is not a prime below 2^31");
  }
  if (!is_primitive(alpha, q, prime_factors(q - 1))) {
    throw ParameterError(std::to_string(alpha) + " is not a primitive element of GF(" +
                         std::to_string(q) + ")");
  }
}

FieldElement FieldSpec::element(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(q_);
  if (r < 0) r += q_;
  return {static_cast<std::uint32_t>(r)};
}

FieldElement FieldSpec::inv(FieldElement a) const {
  if (a.value == 0) throw DomainError("inverse of zero in GF(" + std::to_string(q_) + ")");
  return pow(a, q_ - 2);
}

FieldElement FieldSpec::pow(FieldElement a, std::uint64_t e) const noexcept {
  return {static_cast<std::uint32_t>(pow_mod(a.value, e, q_))};
}

FieldElement find_primitive_element(std::uint32_t q) {
  if (!is_prime(q)) throw ParameterError(std::to_string(q) + " is not prime");
  const auto factors = prime_factors(q - 1);
  for (std::uint64_t a = 1; a < q; ++a) {
    if (is_primitive(a, q, factors)) return {static_cast<std::uint32_t>(a)};
  }
  throw InternalError("no primitive element found in GF(" + std::to_string(q) + ")");
}

FieldSpec select_field(std::size_t n, std::uint32_t s) {
  if (n < 1 || s < 1) throw ParameterError("select_field needs n >= 1 and s >= 1");
  for (std::uint64_t q = 2; q < kMaxModulus; ++q) {
    if (!is_prime(q)) continue;
    const std::uint64_t g = std::gcd<std::uint64_t>(s, q - 1);
    if (q < g * n + 1) continue;
    FieldSpec spec(static_cast<std::uint32_t>(q), find_primitive_element(static_cast<std::uint32_t>(q)).value);
    spec.g_ = static_cast<std::uint32_t>(g);
    spec.s_ = s;
    return spec;
  }
  throw ParameterError("no prime below 2^31 satisfies the field size condition");
}

std::vector<FieldElement> evaluation_points(const FieldSpec& field, std::size_t n) {
  if (n > field.modulus() - 1) {
    throw ParameterError("cannot pick " + std::to_string(n) + " distinct nonzero points in GF(" +
                         std::to_string(field.modulus()) + ")");
  }
  std::vector<FieldElement> points;
  points.reserve(n);
  FieldElement x = field.one();
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back(x);
    x = field.mul(x, field.primitive());
  }
  return points;
}

bool verify_root_condition(const FieldSpec& field, std::size_t n, std::uint32_t s) {
  const auto points = evaluation_points(field, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const FieldElement ratio = field.mul(points[i], field.inv(points[j]));
      if (field.pow(ratio, s) == field.one()) return false;
    }
  }
  return true;
}

}  // namespace epsmsr
