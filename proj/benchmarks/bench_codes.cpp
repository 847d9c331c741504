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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "epsmsr/eps_msr.hpp"
#include "epsmsr/multi_repair.hpp"

using namespace epsmsr;

namespace {

std::vector<FieldElement> random_message(std::size_t count, const FieldSpec& f) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> pick(0, f.modulus() - 1);
  std::vector<FieldElement> out(count);
  for (auto& x : out) x = {pick(rng)};
  return out;
}

// n=6, k=3, d=4 over Z_2^3 with four chunks.
const EpsMsrCode& eps_code() {
  static const EpsMsrCode code(6, 3, 4, select_field(6, 2), gv_greedy(3, 4, 0.5, 6));
  return code;
}

const MultiCode& multi_code() {
  static const MultiCode code(6, 3, gv_greedy(2, 3, 1.0 / 3.0, 6), MultiCode::select_field(6, 3));
  return code;
}

void BM_EpsEncode(benchmark::State& state) {
  const auto& code = eps_code();
  const auto msg = random_message(code.k() * code.ell(), code.field());
  for (auto _ : state) benchmark::DoNotOptimize(code.encode(msg));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * msg.size() * sizeof(FieldElement)));
}
BENCHMARK(BM_EpsEncode);

void BM_EpsPlanRepair(benchmark::State& state) {
  const auto& code = eps_code();
  const std::vector<std::size_t> helpers = {1, 2, 3, 4};
  for (auto _ : state) benchmark::DoNotOptimize(code.plan_repair(0, helpers));
}
BENCHMARK(BM_EpsPlanRepair);

void BM_EpsRepairStripe(benchmark::State& state) {
  const auto& code = eps_code();
  const auto word = code.encode(random_message(code.k() * code.ell(), code.field()));
  const std::vector<std::size_t> helpers = {1, 2, 3, 4};
  const auto plan = code.plan_repair(0, helpers);
  for (auto _ : state) benchmark::DoNotOptimize(plan.reconstruct(plan.collect(word.nodes)));
}
BENCHMARK(BM_EpsRepairStripe);

void BM_EpsEraseDecode(benchmark::State& state) {
  const auto& code = eps_code();
  const auto word = code.encode(random_message(code.k() * code.ell(), code.field()));
  std::vector<std::optional<NodeShard>> slots(word.nodes.begin(), word.nodes.end());
  slots[0].reset();
  slots[2].reset();
  slots[4].reset();
  for (auto _ : state) benchmark::DoNotOptimize(code.erase_decode(slots));
}
BENCHMARK(BM_EpsEraseDecode);

void BM_MultiPlanRepair(benchmark::State& state) {
  const auto& code = multi_code();
  const std::vector<std::size_t> failed = {0, 3};
  const std::vector<std::size_t> helpers = {1, 2, 4, 5};
  for (auto _ : state) benchmark::DoNotOptimize(plan_repair_multi(code, failed, helpers));
}
BENCHMARK(BM_MultiPlanRepair);

void BM_MultiRepairStripe(benchmark::State& state) {
  const auto& code = multi_code();
  const auto word = code.encode(random_message(code.k() * code.ell(), code.field()));
  const std::vector<std::size_t> failed = {0, 3};
  const std::vector<std::size_t> helpers = {1, 2, 4, 5};
  const auto plan = plan_repair_multi(code, failed, helpers);
  for (auto _ : state) benchmark::DoNotOptimize(plan.reconstruct(plan.collect(word.nodes)));
}
BENCHMARK(BM_MultiRepairStripe);

}  // namespace

BENCHMARK_MAIN();
