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

#include <gtest/gtest.h>

#include <random>

#include "epsmsr/errors.hpp"
#include "epsmsr/prime_field.hpp"
#include "oracles.hpp"

using namespace epsmsr;

TEST(PrimeField, Arithmetic) {
  const FieldSpec f(13, 2);
  EXPECT_EQ(f.mul({7}, {2}), f.one());
  EXPECT_EQ(f.inv({2}), FieldElement{7});
  EXPECT_EQ(f.mul({9}, f.one()), FieldElement{9});
  EXPECT_EQ(f.element(-1), FieldElement{12});
  EXPECT_EQ(f.neg({0}), FieldElement{0});
  EXPECT_THROW(f.inv(f.zero()), DomainError);

  const FieldSpec g(11, 2);
  EXPECT_EQ(g.pow({3}, 5), g.one());
}

TEST(PrimeField, FieldAxiomsRandom) {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {2u, 3u, 5u, 13u, 97u, 65537u, 2147483647u}) {
    const FieldSpec f(q, find_primitive_element(q).value);
    std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
    for (int i = 0; i < 200; ++i) {
      const FieldElement a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
      EXPECT_EQ(f.sub(a, b), f.add(a, f.neg(b)));
      EXPECT_EQ(f.mul(a, b).value, static_cast<std::uint64_t>(a.value) * b.value % q);
      if (a.value != 0) EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
    }
  }
}

TEST(PrimeField, Primality) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(9));
  EXPECT_TRUE(is_prime(2147483647));
  EXPECT_EQ(prime_factors(12), (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(prime_factors(97), (std::vector<std::uint64_t>{97}));
  for (std::uint64_t v = 0; v < 500; ++v) EXPECT_EQ(is_prime(v), oracle::is_prime(v)) << v;
}

TEST(PrimeField, PrimitiveElements) {
  EXPECT_EQ(find_primitive_element(5).value, 2u);
  EXPECT_EQ(find_primitive_element(13).value, 2u);
  EXPECT_EQ(find_primitive_element(3).value, 2u);
  EXPECT_EQ(find_primitive_element(2).value, 1u);
  EXPECT_THROW(find_primitive_element(12), ParameterError);
  // Smallest element of full order, checked by brute force.
  for (std::uint32_t q = 3; q < 400; ++q) {
    if (!oracle::is_prime(q)) continue;
    std::uint32_t want = 1;
    while (oracle::order(want, q) != q - 1) ++want;
    EXPECT_EQ(find_primitive_element(q).value, want) << q;
  }
  EXPECT_THROW(FieldSpec(13, 3), ParameterError);  // order 3
  EXPECT_THROW(FieldSpec(15, 2), ParameterError);
}

TEST(PrimeField, SelectField) {
  EXPECT_EQ(select_field(6, 2).modulus(), 13u);
  EXPECT_EQ(select_field(4, 2).modulus(), 11u);
  EXPECT_EQ(select_field(2, 2).modulus(), 5u);
  EXPECT_EQ(select_field(4, 2).g(), 2u);
  EXPECT_EQ(select_field(4, 2).selected_for(), 2u);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint32_t s = 1; s <= 6; ++s) {
      EXPECT_EQ(select_field(n, s).modulus(), oracle::smallest_field(n, s)) << n << "," << s;
    }
  }
  EXPECT_THROW(select_field(0, 2), ParameterError);
}

TEST(PrimeField, EvaluationPoints) {
  const FieldSpec f5(5, 2);
  const auto p = evaluation_points(f5, 4);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0].value, 1u);
  EXPECT_EQ(p[1].value, 2u);
  EXPECT_EQ(p[2].value, 4u);
  EXPECT_EQ(p[3].value, 3u);
  EXPECT_EQ(evaluation_points(f5, 1).front(), f5.one());
  const auto p13 = evaluation_points(FieldSpec(13, 2), 3);
  EXPECT_EQ(p13[2].value, 4u);
  EXPECT_THROW(evaluation_points(f5, 5), ParameterError);
}

TEST(PrimeField, RootCondition) {
  EXPECT_TRUE(verify_root_condition(FieldSpec(13, 2), 6, 2));
  EXPECT_FALSE(verify_root_condition(FieldSpec(5, 2), 4, 2));
  EXPECT_TRUE(verify_root_condition(FieldSpec(5, 2), 1, 2));
  // Against a direct check of (alpha^i / alpha^j)^s over all ordered pairs.
  for (std::uint32_t q : {7u, 11u, 13u, 17u, 31u}) {
    const auto a = find_primitive_element(q).value;
    for (std::size_t n = 1; n < q; ++n) {
      for (std::uint32_t s = 1; s <= 6; ++s) {
        bool want = true;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto ai = oracle::pow_mod(a, i, q), aj = oracle::pow_mod(a, j, q);
            const auto ratio = ai * oracle::pow_mod(aj, q - 2, q) % q;
            if (oracle::pow_mod(ratio, s, q) == 1) want = false;
          }
        }
        EXPECT_EQ(verify_root_condition(FieldSpec(q, a), n, s), want) << q << " " << n << " " << s;
      }
    }
  }
}
