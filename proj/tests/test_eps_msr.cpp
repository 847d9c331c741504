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

#include <cstdlib>
#include <random>

#include "epsmsr/base_code.hpp"
#include "epsmsr/eps_msr.hpp"
#include "epsmsr/errors.hpp"
#include "oracles.hpp"

using namespace epsmsr;

namespace {

std::vector<FieldElement> random_message(const EpsMsrCode& code, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return oracle::random_symbols(code.k() * code.ell(), code.field().modulus(), rng);
}

EpsMsrCode half_distance_code() {
  // t=3, lambda=4, n=6, d=n-1.
  return EpsMsrCode(6, 4, 5, select_field(6, 2), gv_greedy(3, 4, 0.5, 6));
}

}  // namespace

TEST(EpsMsr, Construction) {
  const auto code = half_distance_code();
  EXPECT_EQ(code.s(), 2u);
  EXPECT_EQ(code.ell(), 32u);
  EXPECT_EQ(code.chunk_len(), 8u);
  EXPECT_EQ(code.outer().delta(), Fraction(1, 2));
  EXPECT_EQ(code.epsilon(), Fraction(1, 2));
  EXPECT_EQ(code.bandwidth_bound(), 24u);
  const auto f = select_field(6, 2);
  const auto outer = gv_greedy(3, 4, 0.5, 6);
  EXPECT_THROW(EpsMsrCode(6, 4, 4, f, outer), ParameterError);  // s = 1
  EXPECT_THROW(EpsMsrCode(6, 4, 6, f, outer), ParameterError);  // d = n
  EXPECT_THROW(EpsMsrCode(5, 3, 4, f, outer), ParameterError);  // outer size
  EXPECT_THROW(EpsMsrCode(6, 4, 5, FieldSpec(7, 3), outer), ParameterError);
}

TEST(EpsMsr, SingleChunkMatchesBaseCode) {
  const auto f = select_field(5, 2);
  const OuterCode outer(5, 1, {{0}, {1}, {2}, {3}, {4}});
  const EpsMsrCode code(5, 3, 4, f, outer);
  const BaseCode base(5, 3, 2, 5, {0, 1, 2, 3, 4}, f);
  const auto msg = random_message(code, 1);
  EXPECT_EQ(code.encode(msg), encode(base, msg));
}

TEST(EpsMsr, DistanceOneIsMsr) {
  const EpsMsrCode code(4, 2, 3, select_field(4, 2), gv_greedy(4, 2, 1.0, 4));
  EXPECT_EQ(code.epsilon(), Fraction(0));
  EXPECT_EQ(code.bandwidth_bound(), code.ell() / 2);
  const auto word = code.encode(random_message(code, 2));
  for (std::size_t i = 0; i < 4; ++i) {
    for (const auto& helpers : oracle::subsets(4, 3, {i})) {
      const auto out = repair(code, i, helpers, word.nodes);
      EXPECT_EQ(out.contents.front(), word.nodes[i]);
      for (const auto& tr : out.transcript.traffic) EXPECT_EQ(tr.transmitted, code.ell() / 2);
    }
  }
}

TEST(EpsMsr, FourChunkParityPattern) {
  const OuterCode outer(3, 4, {{0, 2, 1, 0}, {1, 2, 0, 2}, {0, 1, 2, 1}});
  const auto f = select_field(3, 2);
  const EpsMsrCode code(3, 1, 2, f, outer);
  const auto h = code.global_parity_check();
  const std::size_t len = code.chunk_len();
  ASSERT_EQ(len, 8u);  // s^t = 2^3
  for (std::size_t j = 0; j < 3; ++j) {
    const auto alpha = oracle::pow_mod(f.primitive().value, j, f.modulus());
    for (std::size_t b = 0; b < 4; ++b) {
      for (std::size_t c = 0; c < 4; ++c) {
        const auto block = oracle::to_dense(h.block(code.ell() + b * len, j * code.ell() + c * len, len, len));
        if (b != c) {
          EXPECT_EQ(block, oracle::Dense(len, std::vector<std::uint64_t>(len, 0)));
          continue;
        }
        std::vector<std::uint32_t> v(3, 0);
        v[outer.symbol(j, b)] = 1;
        auto want = oracle::shift_matrix(v, 2);
        for (auto& row : want) {
          for (auto& x : row) x = x * alpha % f.modulus();
        }
        EXPECT_EQ(block, want) << "node " << j << " chunk " << b;
      }
    }
  }
  // First block row: identity on every node.
  EXPECT_EQ(h.block(0, 0, code.ell(), code.ell()), FieldMatrix::identity(f, code.ell()));
}

TEST(EpsMsr, EncodeIsChunkWise) {
  const auto code = half_distance_code();
  const auto zero = code.encode(std::vector<FieldElement>(code.k() * code.ell()));
  EXPECT_TRUE(code.is_codeword(zero));
  for (const auto& node : zero.nodes) {
    for (auto v : node) EXPECT_EQ(v.value, 0u);
  }
  auto msg = random_message(code, 3);
  const auto word = code.encode(msg);
  EXPECT_TRUE(code.is_codeword(word));
  const auto parts = split_chunks(word.nodes, code.lambda(), code.chunk_len());
  for (std::size_t b = 0; b < code.lambda(); ++b) EXPECT_TRUE(code.chunk(b).is_codeword(Codeword{parts[b]}));

  // Changing chunk 2 of the message touches only chunk 2 of each node.
  const std::size_t len = code.chunk_len();
  msg[2 * code.k() * len + 1] = code.field().add(msg[2 * code.k() * len + 1], code.field().one());
  const auto changed = code.encode(msg);
  for (std::size_t j = 0; j < code.n(); ++j) {
    for (std::size_t g = 0; g < code.ell(); ++g) {
      if (g / len != 2) EXPECT_EQ(changed.nodes[j][g], word.nodes[j][g]);
    }
  }
  EXPECT_NE(changed.nodes[4], word.nodes[4]);

  for (const auto& erased : oracle::subsets(6, 2)) {
    std::vector<std::optional<NodeShard>> slots(word.nodes.begin(), word.nodes.end());
    for (auto j : erased) slots[j].reset();
    EXPECT_EQ(code.erase_decode(slots), word);
  }
}

TEST(EpsMsr, ExhaustiveRepairWithinBound) {
  const auto code = half_distance_code();
  const auto word = code.encode(random_message(code, 4));
  std::size_t between = 0;
  for (std::size_t i = 0; i < code.n(); ++i) {
    for (const auto& helpers : oracle::subsets(code.n(), code.d(), {i})) {
      const auto out = repair(code, i, helpers, word.nodes);
      ASSERT_EQ(out.contents.front(), word.nodes[i]);
      EXPECT_TRUE(out.transcript.help_by_transfer);
      EXPECT_TRUE(out.transcript.within_bound);
      for (const auto& tr : out.transcript.traffic) {
        EXPECT_EQ(tr.accessed.size(), tr.transmitted);
        // Per chunk: ell/s symbols unless the helper shares the symbol.
        std::size_t want = 0;
        for (std::size_t b = 0; b < code.lambda(); ++b) {
          want += code.outer().symbol(tr.node, b) == code.outer().symbol(i, b) ? code.chunk_len() : code.chunk_len() / 2;
        }
        EXPECT_EQ(tr.transmitted, want);
        if (tr.transmitted > code.ell() / 2 && tr.transmitted < code.bandwidth_bound()) ++between;
      }
    }
  }
  EXPECT_GT(between, 0u);
}

TEST(EpsMsr, LowerDegreeRepairIsExact) {
  const EpsMsrCode code(6, 3, 4, select_field(6, 2), gv_greedy(3, 4, 0.5, 6));
  const auto word = code.encode(random_message(code, 5));
  for (std::size_t i = 0; i < code.n(); ++i) {
    for (const auto& helpers : oracle::subsets(code.n(), code.d(), {i})) {
      const auto out = repair(code, i, helpers, word.nodes);
      ASSERT_EQ(out.contents.front(), word.nodes[i]);
      EXPECT_TRUE(out.transcript.help_by_transfer);
    }
  }
}

TEST(EpsMsr, RepairArguments) {
  const auto code = half_distance_code();
  const auto word = code.encode(random_message(code, 6));
  EXPECT_THROW(repair(code, 0, std::vector<std::size_t>{1, 2, 3, 4}, word.nodes), ParameterError);
  EXPECT_THROW(repair(code, 0, std::vector<std::size_t>{0, 1, 2, 3, 4}, word.nodes), ParameterError);
  EXPECT_THROW(repair(code, 0, std::vector<std::size_t>{1, 1, 2, 3, 4}, word.nodes), ParameterError);
  EXPECT_THROW(repair(code, 9, std::vector<std::size_t>{1, 2, 3, 4, 5}, word.nodes), ParameterError);
}

TEST(EpsMsr, ThreadCountDoesNotChangeResults) {
  const auto code = half_distance_code();
  const auto msg = random_message(code, 7);
  ::setenv("EPSMSR_THREADS", "1", 1);
  const auto w1 = code.encode(msg);
  const auto r1 = repair(code, 2, std::vector<std::size_t>{0, 1, 3, 4, 5}, w1.nodes);
  ::setenv("EPSMSR_THREADS", "4", 1);
  const auto w4 = code.encode(msg);
  const auto r4 = repair(code, 2, std::vector<std::size_t>{0, 1, 3, 4, 5}, w4.nodes);
  ::unsetenv("EPSMSR_THREADS");
  EXPECT_EQ(w1, w4);
  EXPECT_EQ(r1.contents, r4.contents);
  EXPECT_EQ(r1.transcript.total_transmitted, r4.transcript.total_transmitted);
}
