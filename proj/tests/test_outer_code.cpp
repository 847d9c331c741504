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

#include <cmath>

#include "epsmsr/errors.hpp"
#include "epsmsr/outer_code.hpp"
#include "oracles.hpp"

using namespace epsmsr;

namespace {

// Greedy scan in the order of the integer value of the word in base t.
std::vector<OuterWord> greedy_oracle(std::uint32_t t, std::size_t lambda, std::size_t dist, std::size_t want) {
  std::vector<OuterWord> kept;
  std::size_t total = 1;
  for (std::size_t i = 0; i < lambda; ++i) total *= t;
  for (std::size_t v = 0; v < total && kept.size() < want; ++v) {
    const auto w = oracle::digits_of(v, t, static_cast<std::uint32_t>(lambda));
    bool ok = true;
    for (const auto& k : kept) {
      std::size_t d = 0;
      for (std::size_t i = 0; i < lambda; ++i) d += k[i] != w[i];
      ok = ok && d >= dist;
    }
    if (ok) kept.push_back(w);
  }
  return kept;
}

}  // namespace

TEST(OuterCode, MinDistance) {
  EXPECT_EQ(OuterCode(2, 2, {{0, 0}, {1, 1}}).min_distance(), 2u);
  EXPECT_EQ(OuterCode(2, 2, {{0, 0}, {0, 1}, {1, 0}}).min_distance(), 1u);
  EXPECT_EQ(OuterCode(2, 2, {{0, 0}, {0, 1}, {1, 0}}).delta(), Fraction(1, 2));
  EXPECT_THROW(OuterCode(2, 2, {{0, 1}, {0, 1}}), ParameterError);
  EXPECT_THROW(OuterCode(2, 2, {{0, 1}}), ParameterError);
  EXPECT_THROW(OuterCode(2, 2, {{0, 2}, {0, 1}}), ParameterError);
  EXPECT_THROW(OuterCode(2, 2, {{0}, {0, 1}}), ParameterError);
  EXPECT_EQ(OuterCode(3, 2, {{0, 2}, {1, 2}}).column(1), (std::vector<std::uint32_t>{2, 2}));
}

TEST(OuterCode, GreedySmallCases) {
  EXPECT_EQ(gv_greedy(2, 2, 1.0, 2).words(), (std::vector<OuterWord>{{0, 0}, {1, 1}}));
  EXPECT_EQ(gv_greedy(3, 1, 1.0, 3).words(), (std::vector<OuterWord>{{0}, {1}, {2}}));
  try {
    gv_greedy(2, 2, 1.0, 3);
    FAIL() << "expected a capacity error";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.achieved(), 2u);
  }
  try {
    gv_greedy(2, 2, 0.5, 6);
    FAIL() << "expected a capacity error";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.achieved(), 4u);
  }
  EXPECT_THROW(gv_greedy(1, 2, 0.5, 2), ParameterError);
  EXPECT_THROW(gv_greedy(2, 2, 0.0, 2), ParameterError);
  EXPECT_THROW(gv_greedy(2, 2, 1.5, 2), ParameterError);
}

TEST(OuterCode, GreedyMatchesOracle) {
  for (std::uint32_t t = 2; t <= 4; ++t) {
    for (std::size_t lambda = 1; lambda <= 5; ++lambda) {
      for (double delta : {0.2, 0.34, 0.5, 0.75, 1.0}) {
        const auto dist = static_cast<std::size_t>(std::ceil(delta * lambda - 1e-9));
        const auto all = greedy_oracle(t, lambda, dist, 1000);
        for (std::size_t want : {2u, 4u, 6u}) {
          if (all.size() >= want) {
            const auto code = gv_greedy(t, lambda, delta, want);
            EXPECT_EQ(code.words(), std::vector<OuterWord>(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(want)));
            EXPECT_GE(boost::rational_cast<double>(code.delta()), delta - 1e-12);
          } else {
            EXPECT_THROW(gv_greedy(t, lambda, delta, want), CapacityError);
          }
        }
      }
    }
  }
}

TEST(OuterCode, Entropy) {
  EXPECT_DOUBLE_EQ(entropy_t(2, 0.0), 0.0);
  EXPECT_NEAR(entropy_t(2, 0.5), 1.0, 1e-12);
  EXPECT_NEAR(entropy_t(3, 2.0 / 3.0), 1.0, 1e-12);
  EXPECT_NEAR(entropy_t(2, 0.11), 0.4999, 1e-4);
  EXPECT_THROW(entropy_t(2, 0.6), DomainError);
  EXPECT_THROW(entropy_t(2, -0.1), DomainError);
  EXPECT_THROW(entropy_t(1, 0.0), DomainError);
  EXPECT_NEAR(gv_size_estimate(2, 10, 0.11), std::pow(2.0, 10 * (1 - entropy_t(2, 0.11))), 1e-9);
}

TEST(OuterCode, Epsilon) {
  EXPECT_EQ(epsilon_of(OuterCode(3, 1, {{0}, {1}, {2}}), 2), Fraction(0));
  EXPECT_EQ(epsilon_of(OuterCode(2, 2, {{0, 0}, {0, 1}}), 2), Fraction(1, 2));
  EXPECT_EQ(epsilon_of(OuterCode(2, 4, {{0, 0, 0, 0}, {0, 1, 1, 1}}), 3), Fraction(1, 2));
  // Larger delta never raises epsilon.
  for (std::uint32_t s = 2; s <= 5; ++s) {
    Fraction prev(1000);
    for (double delta : {0.25, 0.5, 0.75, 1.0}) {
      const auto eps = epsilon_of(gv_greedy(4, 4, delta, 3), s);
      EXPECT_LE(eps, prev);
      prev = eps;
    }
  }
}
