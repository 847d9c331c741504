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
#include <set>

#include "epsmsr/base_code.hpp"
#include "epsmsr/errors.hpp"
#include "epsmsr/multi_repair.hpp"
#include "oracles.hpp"

using namespace epsmsr;

namespace {

Codeword random_word(const MultiCode& code, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return code.encode(oracle::random_symbols(code.k() * code.ell(), code.field().modulus(), rng));
}

// n=6, k=3 over Z_6^2 with three chunks.
MultiCode six_three() { return MultiCode(6, 3, gv_greedy(2, 3, 1.0 / 3.0, 6), MultiCode::select_field(6, 3)); }

}  // namespace

TEST(MultiRepair, Lcm) {
  EXPECT_EQ(lcm_up_to(1), 1u);
  EXPECT_EQ(lcm_up_to(3), 6u);
  EXPECT_EQ(lcm_up_to(4), 12u);
  EXPECT_EQ(lcm_up_to(6), 60u);
  EXPECT_THROW(lcm_up_to(0), ParameterError);
}

TEST(MultiRepair, Construction) {
  const auto code = six_three();
  EXPECT_EQ(code.zeta(), 6u);
  EXPECT_EQ(code.chunk_len(), 36u);
  EXPECT_TRUE(code.chunk(0).verify_mds());
  const auto f = MultiCode::select_field(6, 3);
  EXPECT_GE(static_cast<std::uint64_t>(f.modulus()), std::gcd<std::uint64_t>(6, f.modulus() - 1) * 6 + 1);
  for (std::uint32_t m = 2; m <= 3; ++m) EXPECT_TRUE(verify_root_condition(f, 6, m));

  // r = 1: zeta = 1 and one symbol per chunk.
  const MultiCode scalar(4, 3, OuterCode(2, 3, {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}}),
                         MultiCode::select_field(4, 3));
  EXPECT_EQ(scalar.zeta(), 1u);
  EXPECT_EQ(scalar.ell(), 3u);
  const auto w = random_word(scalar, 1);
  std::vector<std::optional<NodeShard>> slots(w.nodes.begin(), w.nodes.end());
  slots[2].reset();
  EXPECT_EQ(scalar.erase_decode(slots), w);

  EXPECT_THROW(MultiCode(6, 3, gv_greedy(2, 3, 0.3, 6), FieldSpec(7, 3)), ParameterError);
  EXPECT_THROW(MultiCode(5, 3, gv_greedy(2, 3, 0.3, 6), f), ParameterError);
}

TEST(MultiRepair, ClassifyFailures) {
  // Chunk 0 symbols: 0 1 1 2 0 2.
  const OuterCode outer(3, 2, {{0, 0}, {1, 0}, {1, 1}, {2, 0}, {0, 1}, {2, 1}});
  const MultiCode code(6, 3, outer, MultiCode::select_field(6, 3));
  const auto one = classify_failures(code, std::vector<std::size_t>{3}, 0, 4);
  EXPECT_EQ(one.z(), 1u);
  EXPECT_EQ(one.moduli, (std::vector<std::uint32_t>{2}));
  const auto same = classify_failures(code, std::vector<std::size_t>{2, 1}, 0, 3);
  EXPECT_EQ(same.z(), 1u);
  EXPECT_EQ(same.classes.front(), (std::vector<std::size_t>{1, 2}));
  const auto two = classify_failures(code, std::vector<std::size_t>{3, 0, 4}, 0, 3);
  EXPECT_EQ(two.symbols, (std::vector<std::uint32_t>{0, 2}));
  EXPECT_EQ(two.classes[0], (std::vector<std::size_t>{0, 4}));
  EXPECT_EQ(two.classes[1], (std::vector<std::size_t>{3}));
  EXPECT_EQ(two.moduli, (std::vector<std::uint32_t>{1, 2}));
  EXPECT_THROW(classify_failures(code, std::vector<std::size_t>{0, 1, 2, 3}, 0, 3), ParameterError);
  EXPECT_THROW(classify_failures(code, std::vector<std::size_t>{}, 0, 3), ParameterError);
}

TEST(MultiRepair, UnionDimension) {
  const std::vector<std::uint32_t> s23 = {2, 3};
  EXPECT_EQ(union_dimension(6, 1, s23, std::vector<std::uint32_t>{0, 0}), 4u);
  EXPECT_EQ(union_dimension(6, 2, s23, std::vector<std::uint32_t>{0, 1}), 24u);
  EXPECT_EQ(union_dimension(6, 2, std::vector<std::uint32_t>{3}, std::vector<std::uint32_t>{1}), 12u);
  EXPECT_THROW(union_dimension(6, 1, std::vector<std::uint32_t>{4}, std::vector<std::uint32_t>{0}), ParameterError);
}

TEST(MultiRepair, UnionDimensionFormula) {
  for (std::uint32_t r = 2; r <= 4; ++r) {
    const auto zeta = static_cast<std::uint32_t>(lcm_up_to(r));
    for (std::uint32_t t = 1; t <= 2; ++t) {
      for (std::uint32_t z = 1; z <= std::min(r, t); ++z) {
        for (std::uint32_t dk = 0; dk + z <= r; ++dk) {
          std::vector<std::uint32_t> moduli, coords;
          for (std::uint32_t mu = 1; mu <= z; ++mu) {
            moduli.push_back(dk + mu);
            coords.push_back(mu - 1);
          }
          std::size_t order = 1;
          for (std::uint32_t i = 0; i < t; ++i) order *= zeta;
          EXPECT_EQ(union_dimension(zeta, t, moduli, coords) * (dk + z), z * order)
              << "r=" << r << " t=" << t << " z=" << z << " d-k=" << dk;
        }
      }
    }
  }
}

TEST(MultiRepair, StepSystemsAreDirectSums) {
  const FieldSpec f = MultiCode::select_field(6, 3);
  const GroupShape shape(6, 2);
  for (std::uint32_t w = 0; w < 2; ++w) {
    for (std::uint32_t s : {1u, 2u, 3u}) {
      const auto sel = build_selector(shape, w, s);
      const auto xw = AlgebraElement::basis(GroupVector::unit(shape, w), f);
      std::vector<FieldMatrix> parts;
      for (std::uint32_t m = 0; m < s; ++m) parts.push_back(xw.pow(m).selected_representation(sel));
      EXPECT_EQ(rank(mat_stack(parts)), shape.order());
    }
  }
}

TEST(MultiRepair, SingleFailureMatchesEpsMsr) {
  // n=5, k=3: zeta = 2 = d - k + 1 with d = 4, so both codes share chunk codes.
  const OuterCode outer(3, 2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {1, 2}});
  const FieldSpec f = MultiCode::select_field(5, 3);
  const MultiCode code(5, 3, outer, f);
  const EpsMsrCode eps(5, 3, 4, f, outer);
  const auto word = random_word(code, 2);
  // Messages are chunk-major: chunk b of nodes 0..k-1, then chunk b + 1.
  std::vector<FieldElement> message;
  const std::size_t len = code.chunk_len();
  for (std::size_t b = 0; b < code.lambda(); ++b) {
    for (std::size_t j = 0; j < 3; ++j) {
      message.insert(message.end(), word.nodes[j].begin() + b * len, word.nodes[j].begin() + (b + 1) * len);
    }
  }
  ASSERT_EQ(eps.encode(message), word);
  for (std::size_t i = 0; i < 5; ++i) {
    for (const auto& helpers : oracle::subsets(5, 4, {i})) {
      const std::vector<std::size_t> failed = {i};
      const auto multi = repair_multi(code, failed, helpers, word.nodes);
      const auto single = repair(eps, i, helpers, word.nodes);
      EXPECT_EQ(multi.contents.front(), word.nodes[i]);
      EXPECT_EQ(single.contents.front(), word.nodes[i]);
      ASSERT_EQ(multi.transcript.traffic.size(), single.transcript.traffic.size());
      for (std::size_t x = 0; x < helpers.size(); ++x) {
        EXPECT_EQ(multi.transcript.traffic[x].accessed, single.transcript.traffic[x].accessed);
      }
      EXPECT_EQ(multi.transcript.bound, single.transcript.bound);
    }
  }
}

TEST(MultiRepair, HelperOutsideFailedSymbolsSendsUnion) {
  // Chunk 0 symbols: 0 1 2 2 0 1; helpers 2 and 3 hold a symbol outside W.
  const OuterCode outer(3, 2, {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {0, 1}, {1, 1}});
  const MultiCode code(6, 3, outer, MultiCode::select_field(6, 3));
  const auto word = random_word(code, 3);
  const std::vector<std::size_t> failed = {0, 1};
  const std::vector<std::size_t> helpers = {2, 3, 4, 5};
  const auto chunk0 = split_chunks(word.nodes, code.lambda(), code.chunk_len()).front();
  const auto out = sequential_repair_chunk(code, failed, helpers, 0, chunk0);
  EXPECT_EQ(out.contents[0], chunk0[0]);
  EXPECT_EQ(out.contents[1], chunk0[1]);
  const std::size_t expect = union_dimension(6, 3, std::vector<std::uint32_t>{2, 3}, std::vector<std::uint32_t>{0, 1});
  EXPECT_EQ(expect, 144u);
  for (const auto& tr : out.transcript.traffic) {
    if (tr.node == 2 || tr.node == 3) EXPECT_EQ(tr.transmitted, expect);
  }
  EXPECT_TRUE(out.transcript.help_by_transfer);
}

TEST(MultiRepair, ZeroCodeword) {
  const auto code = six_three();
  const auto zero = code.encode(std::vector<FieldElement>(code.k() * code.ell()));
  const std::vector<std::size_t> failed = {0, 3};
  const std::vector<std::size_t> helpers = {1, 2, 4};
  const auto out = repair_multi(code, failed, helpers, zero.nodes);
  for (const auto& c : out.contents) EXPECT_EQ(c, zero.nodes[0]);
}

TEST(MultiRepair, DistinctSymbolsMeetOptimum) {
  // delta = 1 with t >= n: every helper sends h ell / (d - k + h).
  const MultiCode code(5, 3, OuterCode(5, 1, {{0}, {1}, {2}, {3}, {4}}), MultiCode::select_field(5, 3));
  const auto word = random_word(code, 4);
  for (std::size_t h = 1; h <= 2; ++h) {
    for (const auto& failed : oracle::subsets(5, h)) {
      for (std::size_t d = 3; d + h <= 5; ++d) {
        for (const auto& helpers : oracle::subsets(5, d, failed)) {
          const auto out = repair_multi(code, failed, helpers, word.nodes);
          for (std::size_t x = 0; x < h; ++x) ASSERT_EQ(out.contents[x], word.nodes[failed[x]]);
          const std::size_t want = h * code.ell() / (d - 3 + h);
          for (const auto& tr : out.transcript.traffic) EXPECT_EQ(tr.transmitted, want);
          EXPECT_TRUE(out.transcript.within_bound);
        }
      }
    }
  }
}

TEST(MultiRepair, MaximalFailuresFallBackToDecoding) {
  const auto code = six_three();
  const auto word = random_word(code, 5);
  const std::vector<std::size_t> failed = {1, 2, 5};
  const std::vector<std::size_t> helpers = {0, 3, 4};
  const auto plan = plan_repair_multi(code, failed, helpers);
  ASSERT_EQ(plan.steps().size(), code.lambda());
  for (const auto& step : plan.steps()) EXPECT_TRUE(std::holds_alternative<StripeRepairPlan::DecodeStep>(step.action));
  const auto out = repair_multi(code, failed, helpers, word.nodes);
  for (std::size_t x = 0; x < 3; ++x) EXPECT_EQ(out.contents[x], word.nodes[failed[x]]);
  EXPECT_TRUE(out.transcript.within_bound);
}

TEST(MultiRepair, ExhaustiveSmallRepair) {
  const auto code = six_three();
  const auto word = random_word(code, 6);
  std::size_t cases = 0;
  for (std::size_t h = 1; h <= 2; ++h) {
    for (const auto& failed : oracle::subsets(6, h)) {
      for (std::size_t d = 3; d + h <= 6; ++d) {
        for (const auto& helpers : oracle::subsets(6, d, failed)) {
          const auto out = repair_multi(code, failed, helpers, word.nodes);
          for (std::size_t x = 0; x < h; ++x) ASSERT_EQ(out.contents[x], word.nodes[failed[x]]);
          EXPECT_TRUE(out.transcript.help_by_transfer);
          ++cases;
        }
      }
    }
  }
  EXPECT_EQ(cases, 171u);
}

TEST(MultiRepair, Admissibility) {
  const auto code = six_three();
  const auto word = random_word(code, 7);
  using V = std::vector<std::size_t>;
  EXPECT_THROW(repair_multi(code, V{0, 1, 2, 3}, V{4, 5}, word.nodes), ParameterError);
  EXPECT_THROW(repair_multi(code, V{0}, V{1, 2}, word.nodes), ParameterError);
  EXPECT_THROW(repair_multi(code, V{0, 1}, V{1, 2, 3}, word.nodes), ParameterError);
  EXPECT_THROW(repair_multi(code, V{0, 1}, V{2, 3}, word.nodes), ParameterError);
  EXPECT_THROW(repair_multi(code, V{0, 6}, V{2, 3, 4}, word.nodes), ParameterError);
  EXPECT_THROW(repair_multi(code, V{}, V{2, 3, 4}, word.nodes), ParameterError);
}
